#pragma once

// Non-classicality diagnostics of an evanescent gap mode: the sign of
// E^2 = (hbar k c)^2 for complex k, and the uncertainty / index-raise
// construction for the double prism.

#include <string>

#include "evanesim/scenarios.hpp"
#include "evanesim/wavecore.hpp"

namespace evanesim {

enum class EnergySign { Positive, Zero, Negative };

std::string_view to_string(EnergySign s);

/// Sign of (hbar |Re k| c)^2 - (hbar |Im k| c)^2.
EnergySign einstein_check(const WaveNumber& k);

struct VirtualityReport {
  Complex k;
  double kappa = 0.0;
  EnergySign energy_sign = EnergySign::Zero;
  double delta_x = 0.0;        // 1/kappa, m
  double delta_p_bound = 0.0;  // hbar kappa, kg m/s
  double delta_n = 0.0;        // sqrt(n2^2 sin^2 - n1^2)
  WaveNumber raised;           // gap mode with index n1 + delta_n
  WaveClass raised_classification = WaveClass::Evanescent;
  // The chain "dx ~ hbar/k = kappa", which equates a length with a wavenumber;
  // reported as text next to the dimensionless reading used above.
  std::string literal_relation;
};

/// Throws NotEvanescent unless the gap mode of `spec` decays at `omega`.
VirtualityReport uncertainty_report(const DoublePrismSpec& spec, double omega);

}  // namespace evanesim
