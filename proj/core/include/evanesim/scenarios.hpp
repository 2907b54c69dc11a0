#pragma once

// Builders for the physical set-ups: double prism (FTIR), undersized
// waveguide, photonic lattice, acoustic band-gap array and the rectangular
// quantum barrier. Also the Goos-Haenchen shift of the prism face.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "evanesim/conventions.hpp"
#include "evanesim/wavecore.hpp"
#include "evanesim/xfermat.hpp"

namespace evanesim {

struct DoublePrismSpec {
  double prism_index = 1.6;
  double gap = kSpeedOfLight / 9.15e9;  // one free-space wavelength
  double incidence_angle = degrees(45.0);
  Polarization polarization = Polarization::TM;
  double center_frequency = 9.15e9;
  TransverseLock lock = TransverseLock::FixedWavenumber;

  double center_omega() const { return 2.0 * kPi * center_frequency; }
  double wavelength() const { return kSpeedOfLight / center_frequency; }
  ObliqueContext context() const;
};

/// prism | air gap | prism.
Stack double_prism(const DoublePrismSpec& spec);

/// prism | semi-infinite air: the single totally reflecting face.
Stack prism_face(const DoublePrismSpec& spec);

/// Gap-mode wavenumber of the double prism at `omega`.
WaveNumber gap_wavenumber(const DoublePrismSpec& spec, double omega);

/// wide guide | narrow guide of length `narrow_length` | wide guide (TE10).
Stack undersized_waveguide(double wide_width, double narrow_width, double narrow_length);

struct LatticeSpec {
  double n_high = 1.6;
  double n_low = 1.0;
  double d_high = 0.0;
  double d_low = 0.0;
  int periods = 8;

  /// Quarter-wave layers at frequency f0 (Hz).
  static LatticeSpec quarter_wave(double n_high, double n_low, double f0, int periods);
  double period_length() const { return d_high + d_low; }
};

/// n_low ambient | (high, low) x periods | n_low ambient, normal incidence.
Stack photonic_lattice(const LatticeSpec& spec);
Stack photonic_lattice(double n_high, double n_low, double d_high, double d_low, int periods);

std::vector<Layer> lattice_cell(const LatticeSpec& spec);

struct AcousticSegment {
  AcousticMedium medium;
  double length = 0.0;
};

AcousticMedium acoustic_air();

/// entry | segments... | exit at normal incidence.
Stack acoustic_array(std::span<const AcousticSegment> segments, const AcousticMedium& entry,
                     const AcousticMedium& exit);
/// Segments embedded in air.
Stack acoustic_array(std::span<const AcousticSegment> segments);

/// Alternating quarter-wave array: air segments and segments whose
/// impedance is `impedance_ratio` times that of air (duct area ratio).
struct AcousticArraySpec {
  double frequency = 1000.0;
  AcousticMedium host = acoustic_air();
  double impedance_ratio = 4.0;
  int periods = 8;

  std::vector<AcousticSegment> cell() const;
};

Stack acoustic_array(const AcousticArraySpec& spec);

struct QuantumBarrierSpec {
  double barrier_height = 1.0;  // V0
  double barrier_length = 10.0;  // L
  double particle_energy = 0.5;  // E
  double mass = 1.0;

  double outside_wavenumber() const;
  /// sqrt(2 m (V0 - E)); zero when E >= V0.
  double kappa() const;
};

/// Free region | V0 region | free region in natural units. The engine's
/// frequency argument is the energy E.
Stack quantum_barrier(const QuantumBarrierSpec& spec);

/// Bloch half-trace Re(tr/2) of a period matrix; |value| > 1 marks a gap.
double bloch_half_trace(std::span<const Layer> cell, const ObliqueContext& ctx, double omega);

/// Bloch decay per unit length (0 inside a pass band).
double bloch_decay(std::span<const Layer> cell, const ObliqueContext& ctx, double omega);

enum class GhMode { SingleInterface, FiniteGap };

/// D = -d(arg r)/d(k_x) at fixed omega. SingleInterface uses the bare prism
/// face (classic definition), FiniteGap the double-prism reflection.
double goos_haenchen_shift(const DoublePrismSpec& spec, double omega,
                           GhMode mode = GhMode::SingleInterface);

/// A barrier geometry parameterised by its length, with the decay constant
/// that defines kappa*d for saturation windows.
struct BarrierFamily {
  std::string name;
  std::function<Stack(double length)> build;
  std::function<double(double omega)> decay;
  /// Lengths the family can represent exactly (lattices snap to whole periods).
  std::function<double(double length)> snap = [](double d) { return d; };
};

BarrierFamily ftir_family(const DoublePrismSpec& spec);
BarrierFamily waveguide_family(double wide_width, double narrow_width);
BarrierFamily quantum_family(const QuantumBarrierSpec& spec);
BarrierFamily lattice_family(const LatticeSpec& spec);
BarrierFamily acoustic_family(const AcousticArraySpec& spec);

}  // namespace evanesim
