#include "evanesim/wavecore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"

namespace evanesim {

namespace {

constexpr double kCutoffSnap = 16.0 * std::numeric_limits<double>::epsilon();

void require_positive_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError(ErrorCode::InvalidArgument, "angular frequency must be positive");
  }
}

}  // namespace

std::string_view to_string(Polarization p) { return p == Polarization::TE ? "TE" : "TM"; }

std::string_view to_string(WaveClass c) {
  switch (c) {
    case WaveClass::Propagating: return "propagating";
    case WaveClass::Evanescent: return "evanescent";
    case WaveClass::Cutoff: return "cutoff";
  }
  return "unknown";
}

Medium Medium::constant(double n, std::string label) {
  if (!(n > 0.0)) {
    throw DomainError(ErrorCode::InvalidArgument, "refractive index must be positive");
  }
  Medium m;
  m.refractive_index = n;
  m.label = std::move(label);
  return m;
}

double ObliqueContext::transverse_wavenumber(double omega) const {
  const double w = lock == TransverseLock::FixedWavenumber ? reference_omega : omega;
  return w / kSpeedOfLight * incident_medium.index(w) * std::sin(incidence_angle);
}

FrequencyGrid FrequencyGrid::uniform(double omega_start, double omega_stop, std::size_t points,
                                     double center_frequency) {
  if (points < 2 || !(omega_stop > omega_start)) {
    throw DomainError(ErrorCode::InvalidArgument,
                      "frequency grid needs >= 2 points and increasing bounds");
  }
  FrequencyGrid g;
  g.center_frequency = center_frequency;
  g.omega.resize(points);
  const double step = (omega_stop - omega_start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    g.omega[i] = omega_start + step * static_cast<double>(i);
  }
  return g;
}

FrequencyGrid FrequencyGrid::centered(double omega0, double step, std::size_t half_points) {
  if (!(step > 0.0) || half_points == 0) {
    throw DomainError(ErrorCode::InvalidArgument, "centered grid needs step > 0");
  }
  FrequencyGrid g;
  g.center_frequency = omega0 / (2.0 * kPi);
  const auto n = 2 * half_points + 1;
  g.omega.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto offset = static_cast<double>(i) - static_cast<double>(half_points);
    g.omega[i] = omega0 + offset * step;
  }
  return g;
}

WaveNumber branch_sqrt(double kz_squared, double scale_sq) {
  if (std::abs(kz_squared) <= kCutoffSnap * scale_sq) {
    return {Complex(0.0, 0.0), WaveClass::Cutoff};
  }
  if (kz_squared > 0.0) {
    return {Complex(std::sqrt(kz_squared), 0.0), WaveClass::Propagating};
  }
  return {Complex(0.0, std::sqrt(-kz_squared)), WaveClass::Evanescent};
}

WaveNumber longitudinal_wavenumber(const Medium& medium, const ObliqueContext& ctx,
                                   double omega) {
  require_positive_omega(omega);
  const double k0 = omega / kSpeedOfLight;
  const double n = medium.index(omega);
  const double kx = ctx.transverse_wavenumber(omega);
  const double k_sq = k0 * k0 * n * n;
  return branch_sqrt(k_sq - kx * kx, std::max(k_sq, kx * kx));
}

double critical_angle(double n_dense, double n_rare) {
  if (!(n_rare > 0.0) || !(n_dense >= n_rare)) {
    throw DomainError(ErrorCode::NoTotalReflection,
                      "total reflection needs n_dense >= n_rare > 0");
  }
  return std::asin(n_rare / n_dense);
}

WaveNumber waveguide_wavenumber(double width, double omega, double fill_index) {
  require_positive_omega(omega);
  if (!(width > 0.0) || !(fill_index > 0.0)) {
    throw DomainError(ErrorCode::InvalidArgument, "waveguide width and fill index must be positive");
  }
  const double k = omega / kSpeedOfLight * fill_index;
  const double kc = kPi / width;
  return branch_sqrt(k * k - kc * kc, std::max(k * k, kc * kc));
}

double waveguide_cutoff(double width, double fill_index) {
  return kSpeedOfLight / (2.0 * width * fill_index);
}

namespace {

struct ModeVisitor {
  const ObliqueContext& ctx;
  double omega;

  Mode operator()(const Medium& m) const {
    const auto k = longitudinal_wavenumber(m, ctx, omega);
    if (ctx.polarization == Polarization::TE) return {k, k.value};
    const double n = m.index(omega);
    return {k, k.value / (n * n)};
  }

  Mode operator()(const GuideSection& g) const {
    const auto k = waveguide_wavenumber(g.width, omega, g.fill.index(omega));
    return {k, k.value};
  }

  Mode operator()(const AcousticMedium& a) const {
    require_positive_omega(omega);
    if (!(a.sound_speed > 0.0) || !(a.impedance > 0.0)) {
      throw DomainError(ErrorCode::InvalidArgument,
                        "acoustic sound speed and impedance must be positive");
    }
    const WaveNumber k{Complex(omega / a.sound_speed, 0.0), WaveClass::Propagating};
    return {k, k.value / a.density()};
  }

  Mode operator()(const QuantumRegion& q) const {
    if (!(omega > 0.0) || !(q.mass > 0.0)) {
      throw DomainError(ErrorCode::InvalidArgument, "particle energy and mass must be positive");
    }
    const double two_m = 2.0 * q.mass;
    const auto k = branch_sqrt(two_m * (omega - q.potential),
                               two_m * std::max(std::abs(omega), std::abs(q.potential)));
    return {k, k.value / q.mass};
  }
};

}  // namespace

Mode modal_state(const Material& material, const ObliqueContext& ctx, double omega) {
  return std::visit(ModeVisitor{ctx, omega}, material);
}

}  // namespace evanesim
