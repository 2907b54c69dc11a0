#include "evanesim/scenarios.hpp"

#include <algorithm>
#include <cmath>

#include "evanesim/errors.hpp"

namespace evanesim {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(ErrorCode::InvalidArgument, what);
}

void check_prism(const DoublePrismSpec& spec) {
  require(spec.prism_index > 0.0, "prism index must be positive");
  require(spec.gap >= 0.0 && std::isfinite(spec.gap), "gap must be >= 0");
  require(spec.incidence_angle >= 0.0 && spec.incidence_angle < kPi / 2.0,
          "incidence angle must lie in [0, 90) degrees");
  require(spec.center_frequency > 0.0, "center frequency must be positive");
}

}  // namespace

ObliqueContext DoublePrismSpec::context() const {
  ObliqueContext ctx;
  ctx.incidence_angle = incidence_angle;
  ctx.polarization = polarization;
  ctx.incident_medium = Medium::constant(prism_index, "prism");
  ctx.lock = lock;
  ctx.reference_omega = center_omega();
  return ctx;
}

Stack double_prism(const DoublePrismSpec& spec) {
  check_prism(spec);
  const auto prism = Medium::constant(spec.prism_index, "prism");
  return Stack{prism, {Layer{spec.gap, Medium::air()}}, prism, spec.context()};
}

Stack prism_face(const DoublePrismSpec& spec) {
  check_prism(spec);
  return Stack{Medium::constant(spec.prism_index, "prism"), {}, Medium::air(), spec.context()};
}

WaveNumber gap_wavenumber(const DoublePrismSpec& spec, double omega) {
  return longitudinal_wavenumber(Medium::air(), spec.context(), omega);
}

Stack undersized_waveguide(double wide_width, double narrow_width, double narrow_length) {
  require(wide_width > 0.0 && narrow_width > 0.0 && narrow_length >= 0.0,
          "waveguide dimensions must be positive");
  require(narrow_width <= wide_width, "undersized section must not be wider than the feed");
  const GuideSection wide{wide_width, Medium::air()};
  const GuideSection narrow{narrow_width, Medium::air()};
  return Stack{wide, {Layer{narrow_length, narrow}}, wide, ObliqueContext{}};
}

LatticeSpec LatticeSpec::quarter_wave(double n_high, double n_low, double f0, int periods) {
  require(n_high > 0.0 && n_low > 0.0 && f0 > 0.0, "lattice indices and f0 must be positive");
  const double lambda0 = kSpeedOfLight / f0;
  return LatticeSpec{n_high, n_low, lambda0 / (4.0 * n_high), lambda0 / (4.0 * n_low), periods};
}

std::vector<Layer> lattice_cell(const LatticeSpec& spec) {
  return {Layer{spec.d_high, Medium::constant(spec.n_high, "high")},
          Layer{spec.d_low, Medium::constant(spec.n_low, "low")}};
}

Stack photonic_lattice(const LatticeSpec& spec) {
  require(spec.periods >= 1, "lattice needs at least one period");
  require(spec.n_high > 0.0 && spec.n_low > 0.0, "lattice indices must be positive");
  require(spec.d_high > 0.0 && spec.d_low > 0.0, "lattice thicknesses must be positive");
  Stack s;
  s.entry = Medium::constant(spec.n_low, "ambient");
  s.exit = s.entry;
  const auto cell = lattice_cell(spec);
  s.layers.reserve(cell.size() * static_cast<std::size_t>(spec.periods));
  for (int p = 0; p < spec.periods; ++p) {
    s.layers.insert(s.layers.end(), cell.begin(), cell.end());
  }
  return s;
}

Stack photonic_lattice(double n_high, double n_low, double d_high, double d_low, int periods) {
  return photonic_lattice(LatticeSpec{n_high, n_low, d_high, d_low, periods});
}

AcousticMedium acoustic_air() { return AcousticMedium{343.0, 413.0, "air"}; }

Stack acoustic_array(std::span<const AcousticSegment> segments, const AcousticMedium& entry,
                     const AcousticMedium& exit) {
  auto check = [](const AcousticMedium& m) {
    require(m.sound_speed > 0.0 && m.impedance > 0.0,
            "acoustic sound speed and impedance must be positive");
  };
  check(entry);
  check(exit);
  Stack s;
  s.entry = entry;
  s.exit = exit;
  for (const auto& seg : segments) {
    check(seg.medium);
    require(seg.length > 0.0, "acoustic segment length must be positive");
    s.layers.push_back(Layer{seg.length, seg.medium});
  }
  return s;
}

Stack acoustic_array(std::span<const AcousticSegment> segments) {
  require(!segments.empty(), "acoustic array needs at least one segment");
  const auto air = acoustic_air();
  return acoustic_array(segments, air, air);
}

std::vector<AcousticSegment> AcousticArraySpec::cell() const {
  require(frequency > 0.0 && impedance_ratio > 0.0, "acoustic design needs f > 0, ratio > 0");
  const double quarter = host.sound_speed / (4.0 * frequency);
  AcousticMedium duct = host;
  duct.impedance = host.impedance * impedance_ratio;
  duct.label = "duct";
  return {AcousticSegment{duct, quarter}, AcousticSegment{host, quarter}};
}

Stack acoustic_array(const AcousticArraySpec& spec) {
  require(spec.periods >= 1, "acoustic array needs at least one period");
  const auto cell = spec.cell();
  std::vector<AcousticSegment> segments;
  for (int p = 0; p < spec.periods; ++p) segments.insert(segments.end(), cell.begin(), cell.end());
  return acoustic_array(segments, spec.host, spec.host);
}

double QuantumBarrierSpec::outside_wavenumber() const {
  return std::sqrt(2.0 * mass * particle_energy);
}

double QuantumBarrierSpec::kappa() const {
  return barrier_height > particle_energy
             ? std::sqrt(2.0 * mass * (barrier_height - particle_energy))
             : 0.0;
}

Stack quantum_barrier(const QuantumBarrierSpec& spec) {
  require(spec.barrier_height >= 0.0, "barrier height must be >= 0");
  require(spec.barrier_length >= 0.0, "barrier length must be >= 0");
  require(spec.particle_energy > 0.0 && spec.mass > 0.0, "energy and mass must be positive");
  const QuantumRegion free{0.0, spec.mass};
  const QuantumRegion barrier{spec.barrier_height, spec.mass};
  return Stack{free, {Layer{spec.barrier_length, barrier}}, free, ObliqueContext{}};
}

double bloch_half_trace(std::span<const Layer> cell, const ObliqueContext& ctx, double omega) {
  return 0.5 * period_matrix(cell, ctx, omega).trace().real();
}

double bloch_decay(std::span<const Layer> cell, const ObliqueContext& ctx, double omega) {
  const double h = std::abs(bloch_half_trace(cell, ctx, omega));
  if (h <= 1.0) return 0.0;
  double period = 0.0;
  for (const auto& l : cell) period += l.thickness;
  return std::acosh(h) / period;
}

double goos_haenchen_shift(const DoublePrismSpec& spec, double omega, GhMode mode) {
  check_prism(spec);
  const double theta_c = spec.prism_index > 1.0 ? critical_angle(spec.prism_index, 1.0) : kPi / 2;
  if (!(spec.incidence_angle > theta_c)) {
    throw DomainError(ErrorCode::NoTotalReflection,
                      "Goos-Haenchen shift needs an angle beyond the critical angle");
  }
  const double h = std::min({1e-5, 0.25 * (spec.incidence_angle - theta_c),
                             0.25 * (kPi / 2 - spec.incidence_angle)});

  auto evaluate = [&](double angle) {
    DoublePrismSpec s = spec;
    s.incidence_angle = angle;
    s.lock = TransverseLock::FixedAngle;
    const Stack stack = mode == GhMode::SingleInterface ? prism_face(s) : double_prism(s);
    const double kx = stack.ctx.transverse_wavenumber(omega);
    return std::pair{scatter(stack, omega).r, kx};
  };
  const auto [r_plus, kx_plus] = evaluate(spec.incidence_angle + h);
  const auto [r_minus, kx_minus] = evaluate(spec.incidence_angle - h);
  return -std::arg(r_plus / r_minus) / (kx_plus - kx_minus);
}

BarrierFamily ftir_family(const DoublePrismSpec& spec) {
  BarrierFamily f;
  f.name = "ftir";
  f.build = [spec](double d) {
    DoublePrismSpec s = spec;
    s.gap = d;
    return double_prism(s);
  };
  f.decay = [spec](double omega) { return gap_wavenumber(spec, omega).kappa(); };
  return f;
}

BarrierFamily waveguide_family(double wide_width, double narrow_width) {
  BarrierFamily f;
  f.name = "waveguide";
  f.build = [=](double d) { return undersized_waveguide(wide_width, narrow_width, d); };
  f.decay = [=](double omega) { return waveguide_wavenumber(narrow_width, omega).kappa(); };
  return f;
}

BarrierFamily quantum_family(const QuantumBarrierSpec& spec) {
  BarrierFamily f;
  f.name = "quantum";
  f.build = [spec](double d) {
    QuantumBarrierSpec s = spec;
    s.barrier_length = d;
    return quantum_barrier(s);
  };
  f.decay = [spec](double energy) {
    QuantumBarrierSpec s = spec;
    s.particle_energy = energy;
    return s.kappa();
  };
  return f;
}

namespace {

int periods_for(double length, double period) {
  return std::max(1, static_cast<int>(std::lround(length / period)));
}

}  // namespace

BarrierFamily lattice_family(const LatticeSpec& spec) {
  BarrierFamily f;
  f.name = "lattice";
  const double period = spec.period_length();
  f.build = [spec, period](double d) {
    LatticeSpec s = spec;
    s.periods = periods_for(d, period);
    return photonic_lattice(s);
  };
  f.decay = [spec](double omega) {
    const auto cell = lattice_cell(spec);
    return bloch_decay(cell, ObliqueContext{}, omega);
  };
  f.snap = [period](double d) { return periods_for(d, period) * period; };
  return f;
}

BarrierFamily acoustic_family(const AcousticArraySpec& spec) {
  BarrierFamily f;
  f.name = "acoustic";
  const auto cell = spec.cell();
  const double period = cell[0].length + cell[1].length;
  f.build = [spec, period](double d) {
    AcousticArraySpec s = spec;
    s.periods = periods_for(d, period);
    return acoustic_array(s);
  };
  f.decay = [cell](double omega) {
    std::vector<Layer> layers;
    for (const auto& seg : cell) layers.push_back(Layer{seg.length, seg.medium});
    return bloch_decay(layers, ObliqueContext{}, omega);
  };
  f.snap = [period](double d) { return periods_for(d, period) * period; };
  return f;
}

}  // namespace evanesim
