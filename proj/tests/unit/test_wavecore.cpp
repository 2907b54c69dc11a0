#include <gtest/gtest.h>

#include <cmath>

#include "evanesim/conventions.hpp"
#include "evanesim/errors.hpp"
#include "evanesim/wavecore.hpp"
#include "generators.hpp"

using namespace evanesim;

namespace {

ObliqueContext prism_context(double n, double angle_deg, Polarization pol = Polarization::TM) {
  ObliqueContext ctx;
  ctx.incidence_angle = degrees(angle_deg);
  ctx.polarization = pol;
  ctx.incident_medium = Medium::constant(n);
  return ctx;
}

}  // namespace

TEST(BranchSqrt, PositiveArgumentPropagates) {
  const auto k = branch_sqrt(4.0, 1.0);
  EXPECT_EQ(k.classification, WaveClass::Propagating);
  EXPECT_DOUBLE_EQ(k.value.real(), 2.0);
  EXPECT_EQ(k.value.imag(), 0.0);
}

TEST(BranchSqrt, NegativeArgumentDecaysOnUpperBranch) {
  const auto k = branch_sqrt(-9.0, 1.0);
  EXPECT_EQ(k.classification, WaveClass::Evanescent);
  EXPECT_EQ(k.value.real(), 0.0);
  EXPECT_DOUBLE_EQ(k.value.imag(), 3.0);
  EXPECT_DOUBLE_EQ(k.kappa(), 3.0);
}

TEST(BranchSqrt, RoundingNoiseSnapsToCutoff) {
  const auto k = branch_sqrt(1e-18, 1.0);
  EXPECT_EQ(k.classification, WaveClass::Cutoff);
  EXPECT_EQ(k.value, Complex(0.0));
  EXPECT_EQ(k.kappa(), 0.0);
}

TEST(CriticalAngle, PrismAgainstAir) {
  EXPECT_NEAR(to_degrees(critical_angle(1.6, 1.0)), 38.682187, 1e-6);
}

TEST(CriticalAngle, EqualIndicesGiveGrazing) {
  EXPECT_DOUBLE_EQ(critical_angle(1.5, 1.5), kPi / 2);
}

TEST(CriticalAngle, RejectsRareDenserThanDense) {
  EXPECT_THROW(critical_angle(1.0, 1.6), DomainError);
}

TEST(LongitudinalWavenumber, GapModeAtPaperDefaults) {
  const double omega = 2.0 * kPi * 9.15e9;
  const auto k = longitudinal_wavenumber(Medium::air(), prism_context(1.6, 45.0), omega);
  const double k0 = omega / kSpeedOfLight;
  const double oracle = k0 * std::sqrt(1.6 * 1.6 * 0.5 - 1.0);
  EXPECT_EQ(k.classification, WaveClass::Evanescent);
  EXPECT_NEAR(k.kappa(), oracle, 1e-12 * oracle);
  EXPECT_NEAR(k.kappa(), 101.475, 1e-3);
}

TEST(LongitudinalWavenumber, BelowCriticalAnglePropagates) {
  const double omega = 2.0 * kPi * 9.15e9;
  const auto k = longitudinal_wavenumber(Medium::air(), prism_context(1.6, 30.0), omega);
  EXPECT_EQ(k.classification, WaveClass::Propagating);
  const double k0 = omega / kSpeedOfLight;
  const double s = 1.6 * std::sin(degrees(30.0));
  EXPECT_NEAR(k.value.real(), k0 * std::sqrt(1.0 - s * s), 1e-9 * k0);
}

TEST(LongitudinalWavenumber, AtCriticalAngleIsCutoff) {
  const double omega = 2.0 * kPi * 9.15e9;
  auto ctx = prism_context(2.0, 30.0);  // sin 30 = 1/2 = 1/n exactly
  const auto k = longitudinal_wavenumber(Medium::air(), ctx, omega);
  EXPECT_EQ(k.classification, WaveClass::Cutoff);
}

TEST(TransverseLock, FixedAngleScalesWithFrequency) {
  auto ctx = prism_context(1.6, 45.0);
  const double w = 2.0 * kPi * 9.15e9;
  EXPECT_NEAR(ctx.transverse_wavenumber(2.0 * w), 2.0 * ctx.transverse_wavenumber(w), 1e-9);
}

TEST(TransverseLock, FixedWavenumberIsPinned) {
  auto ctx = prism_context(1.6, 45.0);
  ctx.lock = TransverseLock::FixedWavenumber;
  ctx.reference_omega = 2.0 * kPi * 9.15e9;
  const double kx = ctx.transverse_wavenumber(ctx.reference_omega);
  EXPECT_EQ(ctx.transverse_wavenumber(1.1 * ctx.reference_omega), kx);
  EXPECT_NEAR(kx, 1.6 * std::sin(degrees(45.0)) * ctx.reference_omega / kSpeedOfLight, 1e-9);
}

TEST(Waveguide, CutoffOfWrExample) {
  EXPECT_NEAR(waveguide_cutoff(0.02286), 6.557e9, 1e6);
}

TEST(Waveguide, BelowCutoffIsEvanescent) {
  const double a = 0.01;
  const double omega = 2.0 * kPi * 9.15e9;
  const auto k = waveguide_wavenumber(a, omega);
  EXPECT_EQ(k.classification, WaveClass::Evanescent);
  const double k0 = omega / kSpeedOfLight;
  EXPECT_NEAR(k.kappa(), std::sqrt(std::pow(kPi / a, 2) - k0 * k0), 1e-9);
}

TEST(ModalState, TmAdmittanceWeightsByIndexSquared) {
  const double omega = 2.0 * kPi * 9.15e9;
  const auto ctx = prism_context(1.6, 20.0, Polarization::TM);
  const auto m = modal_state(Medium::constant(1.6), ctx, omega);
  EXPECT_NEAR(std::abs(m.admittance - m.k.value / (1.6 * 1.6)), 0.0, 1e-12);
}

TEST(ModalState, TeAdmittanceIsWavenumber) {
  const double omega = 2.0 * kPi * 9.15e9;
  const auto ctx = prism_context(1.6, 20.0, Polarization::TE);
  const auto m = modal_state(Medium::constant(1.6), ctx, omega);
  EXPECT_EQ(m.admittance, m.k.value);
}

TEST(ModalState, AcousticAdmittanceIsWavenumberOverDensity) {
  const AcousticMedium air{343.0, 413.0, "air"};
  const double omega = 2.0 * kPi * 1000.0;
  const auto m = modal_state(air, ObliqueContext{}, omega);
  EXPECT_NEAR(m.k.value.real(), omega / 343.0, 1e-12);
  EXPECT_NEAR(m.admittance.real(), (omega / 343.0) / air.density(), 1e-12);
}

TEST(ModalState, QuantumWavenumberUsesEnergy) {
  const auto inside = modal_state(QuantumRegion{1.0, 1.0}, ObliqueContext{}, 0.5);
  EXPECT_EQ(inside.k.classification, WaveClass::Evanescent);
  EXPECT_NEAR(inside.k.kappa(), 1.0, 1e-15);
  const auto outside = modal_state(QuantumRegion{0.0, 2.0}, ObliqueContext{}, 0.5);
  EXPECT_NEAR(outside.k.value.real(), std::sqrt(2.0 * 2.0 * 0.5), 1e-15);
  EXPECT_NEAR(outside.admittance.real(), outside.k.value.real() / 2.0, 1e-15);
}

TEST(Medium, DispersionOverridesConstantIndex) {
  Medium m = Medium::constant(1.5);
  m.dispersion = [](double omega) { return 1.0 + omega * 1e-12; };
  EXPECT_DOUBLE_EQ(m.index(1e11), 1.1);
}

TEST(FrequencyGrid, UniformEndpointsAndSpacing) {
  const auto g = FrequencyGrid::uniform(1.0, 2.0, 11, 0.25);
  ASSERT_EQ(g.size(), 11u);
  EXPECT_DOUBLE_EQ(g.omega.front(), 1.0);
  EXPECT_DOUBLE_EQ(g.omega.back(), 2.0);
  EXPECT_NEAR(g.spacing(), 0.1, 1e-15);
}

TEST(FrequencyGrid, CenteredIsSymmetric) {
  const auto g = FrequencyGrid::centered(10.0, 0.5, 4);
  ASSERT_EQ(g.size(), 9u);
  EXPECT_DOUBLE_EQ(g.omega[4], 10.0);
  EXPECT_DOUBLE_EQ(g.omega[0], 8.0);
  EXPECT_DOUBLE_EQ(g.omega[8], 12.0);
}

// Property: the branch choice always lands in the closed first quadrant and
// squares back to its argument.
TEST(BranchSqrtProperty, FirstQuadrantAndSquaresBack) {
  gen::Rng rng(0x5eed01);
  for (int i = 0; i < 2000; ++i) {
    const double x = gen::uniform(rng, -1e4, 1e4);
    const auto k = branch_sqrt(x, 1e4);
    EXPECT_GE(k.value.real(), 0.0);
    EXPECT_GE(k.value.imag(), 0.0);
    if (k.classification != WaveClass::Cutoff) {
      EXPECT_NEAR((k.value * k.value).real(), x, 1e-9 * std::max(1.0, std::abs(x)));
    }
  }
}

// Property: evanescence in the gap iff the angle exceeds the critical angle.
TEST(LongitudinalWavenumberProperty, EvanescentExactlyBeyondCriticalAngle) {
  gen::Rng rng(0x5eed02);
  for (int i = 0; i < 1000; ++i) {
    const double n = gen::uniform(rng, 1.05, 3.0);
    const double theta = gen::uniform(rng, 0.0, 89.0);
    const double theta_c = to_degrees(critical_angle(n, 1.0));
    if (std::abs(theta - theta_c) < 1e-6) continue;
    const auto k = longitudinal_wavenumber(Medium::air(), prism_context(n, theta), 1e10);
    EXPECT_EQ(k.classification == WaveClass::Evanescent, theta > theta_c) << n << " " << theta;
  }
}
