#include "evanesim/virtuality.hpp"

#include <cmath>

#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"

namespace evanesim {

std::string_view to_string(EnergySign s) {
  switch (s) {
    case EnergySign::Positive: return "positive";
    case EnergySign::Zero: return "zero";
    case EnergySign::Negative: return "negative";
  }
  return "unknown";
}

EnergySign einstein_check(const WaveNumber& k) {
  const double re = std::abs(k.value.real());
  const double im = std::abs(k.value.imag());
  const double e_sq = re * re - im * im;  // in units of (hbar c)^2
  if (e_sq > 0.0) return EnergySign::Positive;
  if (e_sq < 0.0) return EnergySign::Negative;
  return EnergySign::Zero;
}

VirtualityReport uncertainty_report(const DoublePrismSpec& spec, double omega) {
  DoublePrismSpec at_omega = spec;
  at_omega.lock = TransverseLock::FixedAngle;
  const auto ctx = at_omega.context();
  const auto gap = longitudinal_wavenumber(Medium::air(), ctx, omega);
  if (gap.classification != WaveClass::Evanescent) {
    throw DomainError(ErrorCode::NotEvanescent, "gap mode is not evanescent");
  }

  VirtualityReport rep;
  rep.k = gap.value;
  rep.kappa = gap.kappa();
  rep.energy_sign = einstein_check(gap);
  rep.delta_x = 1.0 / rep.kappa;
  rep.delta_p_bound = kReducedPlanck * rep.kappa;

  const double n1 = 1.0;
  const double n2 = spec.prism_index;
  const double s = std::sin(spec.incidence_angle);
  rep.delta_n = std::sqrt(n2 * n2 * s * s - n1 * n1);

  rep.raised = longitudinal_wavenumber(Medium::constant(n1 + rep.delta_n, "raised gap"), ctx, omega);
  rep.raised_classification = rep.raised.classification;
  rep.literal_relation =
      "dp > hbar/dx ~ hbar*kappa = (k0^2 (n2^2 sin^2(phi) - n1^2))^(1/2), dx ~ hbar/k = kappa";
  return rep;
}

}  // namespace evanesim
