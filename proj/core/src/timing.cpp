#include "evanesim/timing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"

namespace evanesim {

namespace {

constexpr double kMaxPhaseStep = kPi / 4.0;
constexpr double kMinReflection = 1e-9;

std::vector<double> differentiate(const std::vector<double>& phase, const FrequencyGrid& grid) {
  const auto n = phase.size();
  if (n < 3 || grid.size() != n) {
    throw DomainError(ErrorCode::InvalidArgument, "phase time needs at least 3 grid points");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs(phase[i] - phase[i - 1]) > kMaxPhaseStep) {
      throw DomainError(ErrorCode::GridTooCoarse,
                        "adjacent phase step exceeds pi/4; refine the frequency grid");
    }
  }
  const double h = grid.spacing();
  std::vector<double> tau(n);
  tau[0] = (-3.0 * phase[0] + 4.0 * phase[1] - phase[2]) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) tau[i] = (phase[i + 1] - phase[i - 1]) / (2.0 * h);
  tau[n - 1] = (3.0 * phase[n - 1] - 4.0 * phase[n - 2] + phase[n - 3]) / (2.0 * h);
  return tau;
}

}  // namespace

std::string_view to_string(Channel c) {
  return c == Channel::Transmission ? "transmission" : "reflection";
}

std::vector<double> phase_time(const ScatterSpectrum& spectrum, Channel channel) {
  return differentiate(channel == Channel::Transmission ? spectrum.phase_t : spectrum.phase_r,
                       spectrum.grid);
}

std::vector<double> quantum_phase_time(const ScatterSpectrum& spectrum, double hbar) {
  auto tau = phase_time(spectrum, Channel::Transmission);
  for (double& v : tau) v *= hbar;
  return tau;
}

PhaseTimes phase_times_at(const Stack& stack, double omega0, double relative_step) {
  const auto grid = FrequencyGrid::centered(omega0, relative_step * omega0, 4);
  const auto spectrum = scatter_spectrum(stack, grid);
  const std::size_t mid = grid.size() / 2;

  PhaseTimes out;
  out.transmission = phase_time(spectrum, Channel::Transmission)[mid];
  const bool has_reflection = std::all_of(spectrum.r.begin(), spectrum.r.end(),
                                          [](Complex r) { return std::abs(r) > kMinReflection; });
  out.reflection = has_reflection ? phase_time(spectrum, Channel::Reflection)[mid]
                                  : std::numeric_limits<double>::quiet_NaN();
  return out;
}

std::vector<double> default_hartman_lengths(double kappa) {
  if (!(kappa > 0.0)) {
    throw DomainError(ErrorCode::NotEvanescent, "barrier is not evanescent at omega0");
  }
  std::vector<double> lengths;
  for (int i = 1; i <= 24; ++i) lengths.push_back(0.5 * i / kappa);
  return lengths;
}

HartmanScan hartman_scan(const BarrierFamily& family, double omega0,
                         std::span<const double> lengths) {
  HartmanScan scan;
  scan.kappa = family.decay(omega0);
  if (!(scan.kappa > 0.0)) {
    throw DomainError(ErrorCode::NotEvanescent,
                      family.name + " barrier is not evanescent at omega0");
  }
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0) || (i > 0 && !(lengths[i] > lengths[i - 1]))) {
      throw DomainError(ErrorCode::InvalidArgument,
                        "Hartman lengths must be positive and increasing");
    }
  }

  scan.curve.reserve(lengths.size());
  for (double requested : lengths) {
    const double d = family.snap(requested);
    const auto times = phase_times_at(family.build(d), omega0);
    scan.curve.push_back({d, scan.kappa * d, times.transmission, times.reflection});
  }

  auto mean_over = [&](double lo, double hi) {
    double sum = 0.0;
    int count = 0;
    for (const auto& p : scan.curve) {
      if (p.kappa_length >= lo && p.kappa_length <= hi) {
        sum += p.tau_t;
        ++count;
      }
    }
    return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
  };
  scan.tau_asymptotic = mean_over(kSaturationStart, kSaturationStop);
  if (std::isnan(scan.tau_asymptotic)) {
    scan.tau_asymptotic = mean_over(kSaturationStart, std::numeric_limits<double>::infinity());
  }
  if (std::isnan(scan.tau_asymptotic)) {
    throw DomainError(ErrorCode::NoSaturation, "scan never reaches kappa*d >= 5");
  }
  return scan;
}

double transmission_phase_slope(const BarrierFamily& family, double omega, double length,
                                double step) {
  const auto t_plus = scatter(family.build(length + step), omega).t;
  const auto t_minus = scatter(family.build(length - step), omega).t;
  return std::arg(t_plus / t_minus) / (2.0 * step);
}

double universal_ratio(double tau_asymptotic, double f0) {
  if (!(tau_asymptotic > 0.0) || !(f0 > 0.0)) {
    throw DomainError(ErrorCode::InvalidArgument, "universal ratio needs tau > 0 and f0 > 0");
  }
  return tau_asymptotic * f0;
}

TimingReport timing_report(const BarrierFamily& family, double length, double omega0,
                           const FrequencyGrid& grid) {
  TimingReport report;
  report.grid = grid;
  const auto spectrum = scatter_spectrum(family.build(family.snap(length)), grid);
  report.tau_transmission = phase_time(spectrum, Channel::Transmission);
  report.tau_reflection = phase_time(spectrum, Channel::Reflection);

  const double kappa = family.decay(omega0);
  const auto lengths = default_hartman_lengths(kappa);
  const auto scan = hartman_scan(family, omega0, lengths);
  report.tau_asymptotic = scan.tau_asymptotic;
  report.universal_ratio = universal_ratio(scan.tau_asymptotic, omega0 / (2.0 * kPi));
  report.hartman_curve = scan.curve;
  return report;
}

}  // namespace evanesim
