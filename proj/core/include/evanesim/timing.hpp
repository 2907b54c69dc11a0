#pragma once

// Phase-time extraction tau = d(arg)/d(omega), Hartman scans over barrier
// length and the universal ratio tau * f0.

#include <span>
#include <vector>

#include "evanesim/scenarios.hpp"
#include "evanesim/xfermat.hpp"

namespace evanesim {

enum class Channel { Transmission, Reflection };

std::string_view to_string(Channel c);

/// Derivative of the unwrapped phase over the grid: central differences in
/// the interior, second-order one-sided stencils at the ends.
/// Throws GridTooCoarse when any adjacent phase step exceeds pi/4.
std::vector<double> phase_time(const ScatterSpectrum& spectrum, Channel channel);

/// Particle form: hbar * d(arg t)/dE on an energy grid (natural units by default).
std::vector<double> quantum_phase_time(const ScatterSpectrum& spectrum, double hbar = 1.0);

struct PhaseTimes {
  double transmission = 0.0;
  double reflection = 0.0;  // NaN when |r| is too small for a phase to exist
};

/// Phase times at omega0 from a 9-point grid of spacing relative_step*omega0.
PhaseTimes phase_times_at(const Stack& stack, double omega0, double relative_step = 1e-4);

struct HartmanPoint {
  double length = 0.0;
  double kappa_length = 0.0;
  double tau_t = 0.0;
  double tau_r = 0.0;
};

struct HartmanScan {
  double kappa = 0.0;
  std::vector<HartmanPoint> curve;
  double tau_asymptotic = 0.0;
};

/// Lower and upper kappa*d bounds of the saturation window.
inline constexpr double kSaturationStart = 5.0;
inline constexpr double kSaturationStop = 10.0;

/// kappa*d = 0.5, 1.0, ..., 12.0 expressed as lengths.
std::vector<double> default_hartman_lengths(double kappa);

/// tau(d) at omega0 for each length; tau_asymptotic is the mean of tau_t
/// over kappa*d in [5, 10] (or over kappa*d >= 5 if the window is empty).
HartmanScan hartman_scan(const BarrierFamily& family, double omega0,
                         std::span<const double> lengths);

/// d(arg t)/d(length) at fixed omega, radians per metre (per natural length).
double transmission_phase_slope(const BarrierFamily& family, double omega, double length,
                                double step);

double universal_ratio(double tau_asymptotic, double f0);

struct TimingReport {
  FrequencyGrid grid;
  std::vector<double> tau_transmission;
  std::vector<double> tau_reflection;
  double tau_asymptotic = 0.0;
  double universal_ratio = 0.0;
  std::vector<HartmanPoint> hartman_curve;
};

TimingReport timing_report(const BarrierFamily& family, double length, double omega0,
                           const FrequencyGrid& grid);

}  // namespace evanesim
