#include "evanesim/xfermat.hpp"

#include <cmath>
#include <type_traits>

#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"

namespace evanesim {

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
  TransferMatrix m;
  m.m11 = a.m11 * b.m11 + a.m12 * b.m21;
  m.m12 = a.m11 * b.m12 + a.m12 * b.m22;
  m.m21 = a.m21 * b.m11 + a.m22 * b.m21;
  m.m22 = a.m21 * b.m12 + a.m22 * b.m22;
  m.determinant = a.determinant * b.determinant;
  return m;
}

void validate(const Stack& stack) {
  const auto family = stack.entry.index();
  if (stack.exit.index() != family) {
    throw DomainError(ErrorCode::InvalidArgument, "entry and exit materials differ in family");
  }
  for (const auto& layer : stack.layers) {
    if (layer.material.index() != family) {
      throw DomainError(ErrorCode::InvalidArgument, "layer material family differs from entry");
    }
    if (!(layer.thickness >= 0.0) || !std::isfinite(layer.thickness)) {
      throw DomainError(ErrorCode::InvalidArgument, "layer thickness must be finite and >= 0");
    }
  }
}

TransferMatrix interface_matrix(const Mode& left, const Mode& right) {
  if (left.admittance == Complex(0.0) || right.admittance == Complex(0.0)) {
    throw DomainError(ErrorCode::DegenerateInterface,
                      "interface touches a region exactly at cutoff");
  }
  const Complex ratio = left.admittance / right.admittance;
  TransferMatrix m;
  m.m11 = 0.5 * (1.0 + ratio);
  m.m12 = 0.5 * (1.0 - ratio);
  m.m21 = m.m12;
  m.m22 = m.m11;
  m.determinant = ratio;
  return m;
}

TransferMatrix interface_matrix(const WaveNumber& k_left, const WaveNumber& k_right,
                                Polarization pol, const Medium& left, const Medium& right,
                                double omega) {
  auto admittance = [&](const WaveNumber& k, const Medium& m) {
    if (pol == Polarization::TE) return k.value;
    const double n = m.index(omega);
    return k.value / (n * n);
  };
  return interface_matrix(Mode{k_left, admittance(k_left, left)},
                          Mode{k_right, admittance(k_right, right)});
}

TransferMatrix propagation_matrix(const WaveNumber& kz, double thickness) {
  if (!(thickness >= 0.0)) {
    throw DomainError(ErrorCode::InvalidArgument, "layer thickness must be >= 0");
  }
  TransferMatrix m;
  switch (kz.classification) {
    case WaveClass::Evanescent: {
      // Pure growth/decay: real entries, no phase accumulates.
      const double kd = kz.value.imag() * thickness;
      m.m11 = Complex(std::exp(-kd), 0.0);
      m.m22 = Complex(std::exp(kd), 0.0);
      break;
    }
    case WaveClass::Propagating: {
      const double kd = kz.value.real() * thickness;
      m.m11 = std::polar(1.0, kd);
      m.m22 = std::polar(1.0, -kd);
      break;
    }
    case WaveClass::Cutoff:
      break;
  }
  return m;
}

namespace {

std::vector<Mode> stack_modes(const Stack& stack, double omega) {
  std::vector<Mode> modes;
  modes.reserve(stack.layers.size() + 2);
  modes.push_back(modal_state(stack.entry, stack.ctx, omega));
  for (const auto& layer : stack.layers) {
    modes.push_back(modal_state(layer.material, stack.ctx, omega));
  }
  modes.push_back(modal_state(stack.exit, stack.ctx, omega));
  return modes;
}

}  // namespace

TransferMatrix stack_matrix(const Stack& stack, double omega) {
  validate(stack);
  const auto modes = stack_modes(stack, omega);
  TransferMatrix m = interface_matrix(modes[0], modes[1]);
  for (std::size_t i = 0; i < stack.layers.size(); ++i) {
    m = propagation_matrix(modes[i + 1].k, stack.layers[i].thickness) * m;
    m = interface_matrix(modes[i + 1], modes[i + 2]) * m;
  }
  return m;
}

Scattering scattering_from_matrix(const TransferMatrix& m) {
  if (m.m22 == Complex(0.0) || !std::isfinite(std::abs(m.m22))) {
    throw DomainError(ErrorCode::SingularMatrix, "m22 vanishes; resonance on the grid point");
  }
  return {-m.m21 / m.m22, m.determinant / m.m22};
}

Scattering scatter(const Stack& stack, double omega) {
  return scattering_from_matrix(stack_matrix(stack, omega));
}

Scattering airy_series_oracle(const Stack& stack, double omega, std::size_t terms) {
  validate(stack);
  if (stack.layers.size() != 1) {
    throw DomainError(ErrorCode::NotSingleGap, "Airy summation needs exactly one interior layer");
  }
  const auto modes = stack_modes(stack, omega);
  const Complex p1 = modes[0].admittance;
  const Complex p2 = modes[1].admittance;
  const Complex p3 = modes[2].admittance;

  const Complex r12 = (p1 - p2) / (p1 + p2);
  const Complex t12 = 2.0 * p1 / (p1 + p2);
  const Complex r21 = -r12;
  const Complex t21 = 2.0 * p2 / (p1 + p2);
  const Complex r23 = (p2 - p3) / (p2 + p3);
  const Complex t23 = 2.0 * p2 / (p2 + p3);

  const auto pass = propagation_matrix(modes[1].k, stack.layers[0].thickness).m11;
  const Complex round_trip = r21 * r23 * pass * pass;

  Complex series{0.0};
  Complex power{1.0};
  for (std::size_t n = 0; n < terms; ++n) {
    series += power;
    power *= round_trip;
  }
  return {r12 + t12 * t21 * r23 * pass * pass * series, t12 * t23 * pass * series};
}

double flux_factor(const Stack& stack, double omega) {
  const auto in = modal_state(stack.entry, stack.ctx, omega);
  const auto out = modal_state(stack.exit, stack.ctx, omega);
  if (!(in.admittance.real() > 0.0)) {
    throw DomainError(ErrorCode::InvalidArgument, "entry medium does not carry a propagating wave");
  }
  return out.admittance.real() / in.admittance.real();
}

TransferMatrix period_matrix(std::span<const Layer> cell, const ObliqueContext& ctx,
                             double omega) {
  if (cell.empty()) {
    throw DomainError(ErrorCode::InvalidArgument, "unit cell is empty");
  }
  std::vector<Mode> modes;
  modes.reserve(cell.size());
  for (const auto& layer : cell) modes.push_back(modal_state(layer.material, ctx, omega));

  TransferMatrix m;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    m = propagation_matrix(modes[i].k, cell[i].thickness) * m;
    m = interface_matrix(modes[i], modes[(i + 1) % cell.size()]) * m;
  }
  return m;
}

Stack reversed(const Stack& stack) {
  Stack out;
  out.entry = stack.exit;
  out.exit = stack.entry;
  out.layers.assign(stack.layers.rbegin(), stack.layers.rend());
  out.ctx = stack.ctx;
  if (const auto* exit_medium = std::get_if<Medium>(&stack.exit)) {
    const double w = stack.ctx.lock == TransverseLock::FixedWavenumber
                         ? stack.ctx.reference_omega
                         : 0.0;
    const double n_in = w > 0.0 ? stack.ctx.incident_medium.index(w)
                                : stack.ctx.incident_medium.refractive_index;
    const double n_out = w > 0.0 ? exit_medium->index(w) : exit_medium->refractive_index;
    const double s = n_in * std::sin(stack.ctx.incidence_angle) / n_out;
    if (!(s < 1.0)) {
      throw DomainError(ErrorCode::InvalidArgument,
                        "exit medium is evanescent; reversed incidence undefined");
    }
    out.ctx.incident_medium = *exit_medium;
    out.ctx.incidence_angle = std::asin(s);
  }
  return out;
}

std::vector<double> unwrap_phase(std::span<const Complex> values) {
  std::vector<double> phase(values.size());
  if (values.empty()) return phase;
  double previous = std::arg(values[0]);
  phase[0] = previous;
  for (std::size_t i = 1; i < values.size(); ++i) {
    const double current = std::arg(values[i]);
    phase[i] = phase[i - 1] + std::remainder(current - previous, 2.0 * kPi);
    previous = current;
  }
  return phase;
}

ScatterSpectrum scatter_spectrum(const Stack& stack, const FrequencyGrid& grid) {
  ScatterSpectrum s;
  s.grid = grid;
  s.r.reserve(grid.size());
  s.t.reserve(grid.size());
  for (double w : grid.omega) {
    const auto sc = scatter(stack, w);
    s.r.push_back(sc.r);
    s.t.push_back(sc.t);
  }
  s.phase_r = unwrap_phase(s.r);
  s.phase_t = unwrap_phase(s.t);
  return s;
}

}  // namespace evanesim
