#pragma once

// 2x2 transfer-matrix engine for stratified 1D Helmholtz problems.
//
// Amplitudes (a, b) multiply e^{+ik_z z} and e^{-ik_z z} with z measured from
// the left face of each region. A TransferMatrix maps the amplitudes just left
// of a structure onto those just right of it, so a stack composes as
//   M = I_N * P_{N-1} * ... * P_1 * I_1.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "evanesim/wavecore.hpp"

namespace evanesim {

struct TransferMatrix {
  Complex m11{1.0}, m12{0.0}, m21{0.0}, m22{1.0};
  // Tracked multiplicatively: recomputing m11 m22 - m12 m21 loses all digits
  // once an opaque barrier pushes the entries to e^{2 kappa d}.
  Complex determinant{1.0};

  static TransferMatrix identity() { return {}; }

  /// m11 m22 - m12 m21 from the entries (for cross-checks).
  Complex entry_determinant() const { return m11 * m22 - m12 * m21; }
  Complex trace() const { return m11 + m22; }
};

/// this * rhs: applies rhs first.
TransferMatrix operator*(const TransferMatrix& lhs, const TransferMatrix& rhs);

struct Layer {
  double thickness = 0.0;
  Material material;
};

struct Stack {
  Material entry;
  std::vector<Layer> layers;
  Material exit;
  ObliqueContext ctx;
};

/// Throws unless every region uses the same material family and thicknesses
/// are finite and non-negative.
void validate(const Stack& stack);

struct Scattering {
  Complex r;
  Complex t;
};

TransferMatrix interface_matrix(const Mode& left, const Mode& right);

/// Interface for two optical media at a shared k_x; TM weights by 1/n^2.
TransferMatrix interface_matrix(const WaveNumber& k_left, const WaveNumber& k_right,
                                Polarization pol, const Medium& left, const Medium& right,
                                double omega);

TransferMatrix propagation_matrix(const WaveNumber& kz, double thickness);

TransferMatrix stack_matrix(const Stack& stack, double omega);

Scattering scattering_from_matrix(const TransferMatrix& m);

Scattering scatter(const Stack& stack, double omega);

/// Multiple-reflection partial sum for a single-layer stack. Independent of
/// the matrix path; used as an oracle.
Scattering airy_series_oracle(const Stack& stack, double omega, std::size_t terms);

/// Re(p_exit) / Re(p_entry): weight of |t|^2 in the power balance.
double flux_factor(const Stack& stack, double omega);

/// Matrix of one period of a periodic structure, wrapped back into the basis
/// of the first layer (its trace is the Bloch invariant).
TransferMatrix period_matrix(std::span<const Layer> cell, const ObliqueContext& ctx,
                             double omega);

/// Same layers, traversed from the exit side. Only valid for optical stacks
/// whose exit medium propagates (k_x is re-expressed through Snell's law).
Stack reversed(const Stack& stack);

struct ScatterSpectrum {
  FrequencyGrid grid;
  std::vector<Complex> r;
  std::vector<Complex> t;
  std::vector<double> phase_r;  // unwrapped
  std::vector<double> phase_t;  // unwrapped
};

ScatterSpectrum scatter_spectrum(const Stack& stack, const FrequencyGrid& grid);

/// 1D unwrapping of arg(values): adjacent differences folded into (-pi, pi].
std::vector<double> unwrap_phase(std::span<const Complex> values);

}  // namespace evanesim
