#pragma once

// Media, dispersion relations and longitudinal wavenumbers for every wave
// family the engine handles (optical, waveguide, acoustic, quantum).

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace evanesim {

using Complex = std::complex<double>;

enum class Polarization { TE, TM };
enum class WaveClass { Propagating, Evanescent, Cutoff };

std::string_view to_string(Polarization p);
std::string_view to_string(WaveClass c);

/// Lossless dielectric. `dispersion`, when set, overrides the constant index
/// as a pure function of angular frequency.
struct Medium {
  double refractive_index = 1.0;
  std::string label;
  std::function<double(double omega)> dispersion;

  double index(double omega) const {
    return dispersion ? dispersion(omega) : refractive_index;
  }

  static Medium constant(double n, std::string label = {});
  static Medium air() { return constant(1.0, "air"); }
};

/// How the transverse wavenumber behaves across a frequency sweep.
///   FixedAngle:       k_x = (omega/c) n sin(theta), linear in omega.
///   FixedWavenumber:  k_x pinned to its value at `reference_omega`; models the
///                     field seen at a fixed lateral position (and is the exact
///                     analogue of a waveguide's fixed transverse cutoff).
enum class TransverseLock { FixedAngle, FixedWavenumber };

struct ObliqueContext {
  double incidence_angle = 0.0;  // radians, [0, pi/2)
  Polarization polarization = Polarization::TE;
  Medium incident_medium = Medium::air();
  TransverseLock lock = TransverseLock::FixedAngle;
  double reference_omega = 0.0;  // used by FixedWavenumber only

  double transverse_wavenumber(double omega) const;
};

struct WaveNumber {
  Complex value;
  WaveClass classification = WaveClass::Cutoff;

  /// Decay constant of an evanescent mode (0 otherwise).
  double kappa() const { return classification == WaveClass::Evanescent ? value.imag() : 0.0; }
};

/// Uniform angular-frequency grid. `center_frequency` is f0 in Hz (for the
/// quantum family: E/2pi in natural units).
struct FrequencyGrid {
  std::vector<double> omega;
  double center_frequency = 0.0;

  std::size_t size() const { return omega.size(); }
  double spacing() const { return omega.size() > 1 ? omega[1] - omega[0] : 0.0; }

  static FrequencyGrid uniform(double omega_start, double omega_stop, std::size_t points,
                               double center_frequency);
  /// 2*half_points+1 samples centred on omega0 with step `step`.
  static FrequencyGrid centered(double omega0, double step, std::size_t half_points);
};

/// k_z = sqrt(k_z^2) on the branch Re >= 0, Im >= 0 for a real argument.
/// Values within rounding of zero (relative to `scale_sq`) snap to Cutoff.
WaveNumber branch_sqrt(double kz_squared, double scale_sq);

WaveNumber longitudinal_wavenumber(const Medium& medium, const ObliqueContext& ctx,
                                   double omega);

/// arcsin(n_rare / n_dense). Equal indices give the grazing limit pi/2.
double critical_angle(double n_dense, double n_rare);

/// TE10 mode of a guide of width `width` filled with index `fill_index`.
WaveNumber waveguide_wavenumber(double width, double omega, double fill_index = 1.0);

/// TE10 cutoff frequency c / (2 a n).
double waveguide_cutoff(double width, double fill_index = 1.0);

// --- Material descriptors for the non-optical families -----------------

struct GuideSection {
  double width = 0.0;  // m
  Medium fill = Medium::air();
};

struct AcousticMedium {
  double sound_speed = 343.0;  // m/s
  double impedance = 413.0;    // Pa s / m
  std::string label;

  double density() const { return impedance / sound_speed; }
};

/// Region of constant potential in natural units (hbar = 1).
struct QuantumRegion {
  double potential = 0.0;
  double mass = 1.0;
};

using Material = std::variant<Medium, GuideSection, AcousticMedium, QuantumRegion>;

/// Longitudinal wavenumber plus the modal admittance p whose continuity,
/// together with the field's, fixes the interface conditions.
struct Mode {
  WaveNumber k;
  Complex admittance;
};

/// Evaluates a material at angular frequency `omega` (energy E for quantum).
Mode modal_state(const Material& material, const ObliqueContext& ctx, double omega);

}  // namespace evanesim
