#include <gtest/gtest.h>

#include <cmath>

#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"
#include "evanesim/scenarios.hpp"
#include "evanesim/xfermat.hpp"
#include "generators.hpp"

using namespace evanesim;

namespace {

constexpr double kOmega = 2.0 * kPi * 9.15e9;

ObliqueContext optical(double n_in, double angle, Polarization pol) {
  ObliqueContext ctx;
  ctx.incidence_angle = angle;
  ctx.polarization = pol;
  ctx.incident_medium = Medium::constant(n_in);
  return ctx;
}

// Closed-form optics written independently of the engine.
Complex kz_of(double n, double n_in, double angle, double omega) {
  const double k0 = omega / kSpeedOfLight;
  const double s = n_in * std::sin(angle);
  const double q = n * n - s * s;
  return q >= 0.0 ? Complex(k0 * std::sqrt(q), 0.0) : Complex(0.0, k0 * std::sqrt(-q));
}

Complex weight(double n, Complex kz, Polarization pol) {
  return pol == Polarization::TE ? kz : kz / (n * n);
}

struct Fresnel {
  Complex r, t;
};

Fresnel fresnel(double n1, double n2, double n_in, double angle, Polarization pol) {
  const Complex p1 = weight(n1, kz_of(n1, n_in, angle, kOmega), pol);
  const Complex p2 = weight(n2, kz_of(n2, n_in, angle, kOmega), pol);
  return {(p1 - p2) / (p1 + p2), 2.0 * p1 / (p1 + p2)};
}

Fresnel slab(double n1, double n2, double n3, double d, double angle, Polarization pol) {
  const auto a = fresnel(n1, n2, n1, angle, pol);
  const auto b = fresnel(n2, n3, n1, angle, pol);
  const Complex phase = std::exp(Complex(0.0, 1.0) * kz_of(n2, n1, angle, kOmega) * d);
  const Complex denom = 1.0 + a.r * b.r * phase * phase;
  return {(a.r + b.r * phase * phase) / denom, a.t * b.t * phase / denom};
}

Stack three_media(double n1, double n2, double n3, double d, double angle, Polarization pol) {
  return Stack{Medium::constant(n1), {Layer{d, Medium::constant(n2)}}, Medium::constant(n3),
               optical(n1, angle, pol)};
}

}  // namespace

TEST(Scatter, EmptyStackBetweenEqualMediaIsTransparent) {
  const Stack s{Medium::constant(1.5), {}, Medium::constant(1.5), optical(1.5, 0.3, Polarization::TE)};
  const auto sc = scatter(s, kOmega);
  EXPECT_NEAR(std::abs(sc.r), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(sc.t - 1.0), 0.0, 1e-15);
}

TEST(Scatter, ZeroThicknessLayerIsInvisible) {
  const auto with = scatter(three_media(1.5, 3.0, 1.2, 0.0, 0.2, Polarization::TM), kOmega);
  const Stack bare{Medium::constant(1.5), {}, Medium::constant(1.2), optical(1.5, 0.2, Polarization::TM)};
  const auto without = scatter(bare, kOmega);
  EXPECT_NEAR(std::abs(with.r - without.r), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(with.t - without.t), 0.0, 1e-14);
}

TEST(Scatter, NormalIncidenceFresnel) {
  const Stack s{Medium::constant(1.0), {}, Medium::constant(1.5), optical(1.0, 0.0, Polarization::TE)};
  const auto sc = scatter(s, kOmega);
  EXPECT_NEAR(sc.r.real(), -0.2, 1e-15);
  EXPECT_NEAR(sc.t.real(), 0.8, 1e-15);
}

TEST(Scatter, TotalInternalReflectionHasUnitModulus) {
  const Stack s{Medium::constant(1.6), {}, Medium::air(), optical(1.6, degrees(45.0), Polarization::TM)};
  const auto sc = scatter(s, kOmega);
  EXPECT_NEAR(std::abs(sc.r), 1.0, 1e-14);
}

TEST(Scatter, OpaqueBarrierStaysFinite) {
  DoublePrismSpec spec;
  const double kappa = gap_wavenumber(spec, spec.center_omega()).kappa();
  spec.gap = 300.0 / kappa;
  const auto stack = double_prism(spec);
  const auto sc = scatter(stack, spec.center_omega());
  ASSERT_TRUE(std::isfinite(std::abs(sc.t)));
  EXPECT_GT(std::abs(sc.t), 0.0);
  EXPECT_NEAR(std::log(std::abs(sc.t)), -300.0, 5.0);
  EXPECT_NEAR(std::norm(sc.r) + std::norm(sc.t), 1.0, 1e-12);
}

TEST(Scatter, RejectsMixedFamilies) {
  Stack s{Medium::air(), {Layer{0.01, QuantumRegion{}}}, Medium::air(), {}};
  EXPECT_THROW(scatter(s, kOmega), DomainError);
}

TEST(Scatter, RejectsNegativeThickness) {
  EXPECT_THROW(scatter(three_media(1.0, 1.5, 1.0, -1e-3, 0.0, Polarization::TE), kOmega),
               DomainError);
}

TEST(InterfaceMatrix, CutoffSideIsDegenerate) {
  const Mode propagating{WaveNumber{Complex(1.0), WaveClass::Propagating}, Complex(1.0)};
  const Mode cutoff{WaveNumber{Complex(0.0), WaveClass::Cutoff}, Complex(0.0)};
  try {
    interface_matrix(propagating, cutoff);
    FAIL() << "expected DegenerateInterface";
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInterface);
  }
}

TEST(InterfaceMatrix, DeterminantIsAdmittanceRatio) {
  const Mode a{WaveNumber{Complex(2.0), WaveClass::Propagating}, Complex(2.0)};
  const Mode b{WaveNumber{Complex(0.0, 3.0), WaveClass::Evanescent}, Complex(0.0, 3.0)};
  const auto m = interface_matrix(a, b);
  EXPECT_NEAR(std::abs(m.determinant - m.entry_determinant()), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(m.determinant - Complex(2.0) / Complex(0.0, 3.0)), 0.0, 1e-15);
}

TEST(ScatteringFromMatrix, SingularM22Throws) {
  TransferMatrix m;
  m.m22 = 0.0;
  try {
    scattering_from_matrix(m);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(AiryOracle, RejectsMultiLayerStacks) {
  const auto stack = photonic_lattice(LatticeSpec::quarter_wave(1.6, 1.0, 9.15e9, 2));
  try {
    airy_series_oracle(stack, kOmega, 10);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSingleGap);
  }
}

TEST(PeriodMatrix, QuarterWaveHalfTraceAtDesignFrequency) {
  const auto spec = LatticeSpec::quarter_wave(1.6, 1.0, 9.15e9, 1);
  const auto cell = lattice_cell(spec);
  const double half = bloch_half_trace(cell, ObliqueContext{}, kOmega);
  EXPECT_NEAR(half, -0.5 * (1.6 / 1.0 + 1.0 / 1.6), 1e-12);
}

TEST(UnwrapPhase, FollowsAFastRamp) {
  std::vector<Complex> v;
  for (int i = 0; i < 50; ++i) v.push_back(std::polar(1.0, 0.9 * i));
  const auto phase = unwrap_phase(v);
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(phase[static_cast<std::size_t>(i)], 0.9 * i, 1e-12);
}

TEST(UnwrapPhase, DescendingRamp) {
  std::vector<Complex> v;
  for (int i = 0; i < 50; ++i) v.push_back(std::polar(2.0, 1.0 - 1.3 * i));
  const auto phase = unwrap_phase(v);
  for (int i = 0; i < 50; ++i) EXPECT_NEAR(phase[static_cast<std::size_t>(i)], 1.0 - 1.3 * i, 1e-12);
}

TEST(ScatterSpectrum, MatchesPointwiseScatter) {
  DoublePrismSpec spec;
  const auto stack = double_prism(spec);
  const auto grid = FrequencyGrid::centered(spec.center_omega(), 1e6, 10);
  const auto sp = scatter_spectrum(stack, grid);
  ASSERT_EQ(sp.r.size(), grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto sc = scatter(stack, grid.omega[i]);
    EXPECT_EQ(sp.t[i], sc.t);
    EXPECT_NEAR(std::remainder(sp.phase_t[i] - std::arg(sc.t), 2.0 * kPi), 0.0, 1e-12);
  }
}

TEST(FresnelProperty, SingleInterfaceMatchesClosedForm) {
  gen::Rng rng(0xf7e5);
  for (int i = 0; i < 500; ++i) {
    const double n1 = gen::uniform(rng, 1.0, 3.0);
    const double n2 = gen::uniform(rng, 1.0, 3.0);
    const double angle = degrees(gen::uniform(rng, 0.0, 85.0));
    const auto pol = gen::coin(rng) ? Polarization::TE : Polarization::TM;
    const double s = n1 * std::sin(angle) / n2;
    if (std::abs(s - 1.0) < 1e-6) continue;
    const Stack stack{Medium::constant(n1), {}, Medium::constant(n2), optical(n1, angle, pol)};
    const auto sc = scatter(stack, kOmega);
    const auto oracle = fresnel(n1, n2, n1, angle, pol);
    EXPECT_NEAR(std::abs(sc.r - oracle.r), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(sc.t - oracle.t), 0.0, 1e-12);
  }
}

TEST(SlabProperty, MatchesClosedFormAiryFunction) {
  gen::Rng rng(0xa1b2);
  for (int i = 0; i < 500; ++i) {
    const double n1 = gen::uniform(rng, 1.2, 2.5);
    const double n2 = gen::uniform(rng, 1.0, 3.0);
    const double n3 = gen::uniform(rng, 1.2, 2.5);
    const double angle = degrees(gen::uniform(rng, 0.0, 80.0));
    const auto pol = gen::coin(rng) ? Polarization::TE : Polarization::TM;
    const double s = n1 * std::sin(angle);
    if (s >= n3 || std::abs(s - n2) < 1e-3) continue;
    const double d = gen::uniform(rng, 0.0, 0.1);
    const auto sc = scatter(three_media(n1, n2, n3, d, angle, pol), kOmega);
    const auto oracle = slab(n1, n2, n3, d, angle, pol);
    EXPECT_NEAR(std::abs(sc.r - oracle.r), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(sc.t - oracle.t), 0.0, 1e-10 * std::max(1.0, std::abs(oracle.t)));
  }
}

TEST(DeterminantProperty, TrackedEqualsEntryRatio) {
  gen::Rng rng(0xde7);
  for (int i = 0; i < 300; ++i) {
    const auto c = gen::random_case(rng, i);
    const auto m = stack_matrix(c.stack, c.omega);
    const auto in = modal_state(c.stack.entry, c.stack.ctx, c.omega);
    const auto out = modal_state(c.stack.exit, c.stack.ctx, c.omega);
    const Complex expected = in.admittance / out.admittance;
    EXPECT_NEAR(std::abs(m.determinant - expected), 0.0, 1e-12 * std::abs(expected)) << c.family;
  }
}

// Lossless stacks conserve flux; 1000 draws spread over all five builders.
TEST(UnitarityProperty, FluxBalanceAcrossFamilies) {
  gen::Rng rng(0x0417);
  for (int i = 0; i < 1000; ++i) {
    const auto c = gen::random_case(rng, i);
    const auto sc = scatter(c.stack, c.omega);
    const double balance = std::norm(sc.r) + flux_factor(c.stack, c.omega) * std::norm(sc.t);
    EXPECT_NEAR(balance, 1.0, 1e-10) << c.family << " draw " << i;
  }
}

// Series truncation error is |round trip|^terms; draws keep it below 0.95.
TEST(AiryOracleProperty, SeriesMatchesMatrixPath) {
  gen::Rng rng(0xa127);
  int checked = 0;
  while (checked < 200) {
    const auto c = gen::random_ftir(rng);
    const auto modes = std::array{modal_state(c.stack.entry, c.stack.ctx, c.omega),
                                  modal_state(c.stack.layers[0].material, c.stack.ctx, c.omega),
                                  modal_state(c.stack.exit, c.stack.ctx, c.omega)};
    const Complex r12 = (modes[0].admittance - modes[1].admittance) /
                        (modes[0].admittance + modes[1].admittance);
    const Complex pass = std::exp(Complex(0.0, 1.0) * modes[1].k.value * c.stack.layers[0].thickness);
    if (std::abs(r12 * r12 * pass * pass) > 0.95) continue;
    const auto matrix = scatter(c.stack, c.omega);
    const auto series = airy_series_oracle(c.stack, c.omega, 2000);
    EXPECT_NEAR(std::abs(matrix.r - series.r), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(matrix.t - series.t), 0.0, 1e-12);
    ++checked;
  }
}

// Reciprocity: amplitude transmission from either side differs by the
// admittance ratio, reflection moduli agree.
TEST(ReversedProperty, Reciprocity) {
  gen::Rng rng(0x7e5);
  for (int i = 0; i < 300; ++i) {
    const double n1 = gen::uniform(rng, 1.0, 2.0);
    const double n3 = gen::uniform(rng, 1.0, 2.0);
    const double angle = degrees(gen::uniform(rng, 0.0, 60.0));
    if (n1 * std::sin(angle) >= 0.98 * n3) continue;
    const auto pol = gen::coin(rng) ? Polarization::TE : Polarization::TM;
    Stack s{Medium::constant(n1), {}, Medium::constant(n3), optical(n1, angle, pol)};
    for (int l = 0; l < gen::uniform_int(rng, 1, 5); ++l) {
      s.layers.push_back(Layer{gen::uniform(rng, 0.0, 0.05),
                               Medium::constant(gen::uniform(rng, 1.0, 3.0))});
    }
    const auto fwd = scatter(s, kOmega);
    const auto rev_stack = reversed(s);
    const auto rev = scatter(rev_stack, kOmega);
    const auto p_in = modal_state(s.entry, s.ctx, kOmega).admittance;
    const auto p_out = modal_state(s.exit, s.ctx, kOmega).admittance;
    EXPECT_NEAR(std::abs(rev.t - fwd.t * p_out / p_in), 0.0, 1e-10);
    EXPECT_NEAR(std::abs(rev.r), std::abs(fwd.r), 1e-10);
  }
}
