#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "t4dyn/melnikov.hpp"
#include "t4dyn/quadrature.hpp"

using namespace t4;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIConverged = -2.76339094;

const PotentialProfile& sech2() {
  static const auto q = PotentialProfile::sech2();
  return q;
}

}  // namespace

TEST(Quadrature, GaussLegendreIsExactForPolynomials) {
  for (int n : {2, 5, 16}) {
    const auto rule = gauss_legendre(n);
    ASSERT_EQ(rule.nodes.size(), static_cast<std::size_t>(n));
    for (int k = 0; k < 2 * n; ++k) {
      double sum = 0;
      for (int i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
      EXPECT_NEAR(sum, k % 2 ? 0.0 : 2.0 / (k + 1), 1e-14) << n << ' ' << k;
    }
  }
}

TEST(Quadrature, SimpsonExactForCubics) {
  std::vector<double> f;
  const double h = 0.1;
  for (int i = 0; i <= 10; ++i) f.push_back(std::pow(i * h, 3));
  EXPECT_NEAR(simpson(f, h), 0.25, 1e-14);
  f.pop_back();
  EXPECT_THROW(simpson(f, h), Error);
}

TEST(MelnikovQuadrature, TableAnchors) {
  EXPECT_NEAR(melnikov_quadrature(1.0, sech2(), 0.5, 35).value, -2.76812630, 1e-6);
  EXPECT_NEAR(melnikov_quadrature(1.0, sech2(), 0.0078125, 35).value, kIConverged, 1e-6);
}

TEST(MelnikovQuadrature, DiagnosticsStartAtInitialEnergies) {
  const auto r = melnikov_quadrature(1.0, sech2(), 0.5, 35);
  const auto& d = std::get<QuadratureDiagnostics>(r.diagnostics);
  EXPECT_EQ(d.h0_min, -0.5);
  // Published columns are truncated to eight decimals.
  EXPECT_NEAR(d.h0_max, -0.49025150, 1e-8);
  EXPECT_NEAR(d.h1_min, 0.49833857, 1e-8);
  EXPECT_NEAR(d.h1_max, 0.51067514, 1e-8);
  EXPECT_EQ(r.method, MelnikovMethod::quadrature);
}

TEST(MelnikovQuadrature, ZeroProfileGivesZero) {
  EXPECT_EQ(melnikov_quadrature(1.0, PotentialProfile::zero(), 0.125, 35).value, 0.0);
}

TEST(MelnikovQuadrature, RejectsMisalignedStep) {
  try {
    melnikov_quadrature(1.0, sech2(), 0.3, 35);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(PhaseAngle, LargeAlphaApproachesHalfPi) {
  EXPECT_NEAR(phase_angle(10.0, sech2()).B, kPi / 2, 0.05);
}

TEST(PhaseAngle, UnitAlphaInvertsTableValue) {
  const auto pa = phase_angle(1.0, sech2());
  const double expected = std::atan2(1.0, kIConverged);  // arccot(I / (W alpha)) in (pi/2, pi)
  EXPECT_GT(pa.B, kPi / 2);
  EXPECT_LT(pa.B, kPi);
  EXPECT_NEAR(pa.B, expected, 1e-6);
  EXPECT_GE(pa.n_zeros_used, 5);
}

TEST(PhaseAngle, SmallAlphaWindowHoldsEnoughZeros) {
  const PhaseConfig cfg;
  EXPECT_GE(cfg.effective_window_end(0.5), 20.0 + 7 * kPi / 0.5 - 1e-12);
  EXPECT_EQ(cfg.effective_window_end(10.0), 35.0);
  EXPECT_GE(phase_angle(0.5, sech2()).n_zeros_used, 5);
}

TEST(MelnikovLimit, UnitAlpha) {
  const auto r = melnikov_limit(1.0, sech2());
  EXPECT_NEAR(r.value, -2.76, 5e-3);
  EXPECT_NEAR(r.value, melnikov_quadrature(1.0, sech2(), 0.0078125, 35).value, 5e-3);
  const auto& d = std::get<PhaseDiagnostics>(r.diagnostics);
  EXPECT_TRUE(d.limit_sign_consistent);
  EXPECT_NEAR(d.limit_estimate, r.value, 1e-6);
}

TEST(MelnikovLimit, ScalesWithWronskian) {
  PhaseConfig cfg;
  cfg.z1_slope = 2.0;
  const auto base = melnikov_limit(1.0, sech2());
  const auto scaled = melnikov_limit(1.0, sech2(), cfg);
  EXPECT_DOUBLE_EQ(scaled.wronskian, 2.0);
  EXPECT_NEAR(scaled.value, 2 * base.value, 1e-8);
}

TEST(MelnikovLimit, AgreesWithQuadratureAcrossAlpha) {
  for (double alpha : {0.5, 2.0, 5.0}) {
    const double lim = melnikov_limit(alpha, sech2()).value;
    const double quad = melnikov_quadrature(alpha, sech2(), 0.0078125, 35).value;
    EXPECT_NEAR(lim, quad, 5e-3) << alpha;
  }
}

TEST(MelnikovFunction, Examples) {
  EXPECT_EQ(melnikov_m(0.0, 0.7, kIConverged), 0.0);
  EXPECT_EQ(melnikov_m(0.0, -3.0, 1.0), 0.0);
  EXPECT_NEAR(melnikov_m(1.0, 1.0, kIConverged), -5.52678188, 1e-12);
  EXPECT_EQ(melnikov_m(0.5, 0.0, kIConverged), 0.0);
}

TEST(MelnikovFullLine, EvenOnlyVanishes) {
  EXPECT_NEAR(melnikov_full_line({0.0, 1, 1.0, 0.0}, 1.0, sech2(), 1e-3, 35), 0.0, 1e-8);
}

TEST(MelnikovFullLine, EqualsFourC0C1I) {
  // The cross term of (c0 Y0 + c1 Y1)^2 contributes 2 c0 c1 Y0 Y1 and the
  // even integrand doubles the half line: the full-line value is 4 c0 c1 I.
  const double I = melnikov_quadrature(1.0, sech2(), 0.0078125, 35).value;
  EXPECT_NEAR(melnikov_full_line({0.0, 1, 1.0, 1.0}, 1.0, sech2(), 1e-3, 35), 4 * I, 1e-6);
  EXPECT_NEAR(melnikov_full_line({0.0, 1, 0.5, -2.0}, 1.0, sech2(), 1e-3, 35), -4 * I, 1e-6);
  EXPECT_NEAR(melnikov_full_line({0.0, -1, 1.0, 1.0}, 1.0, sech2(), 1e-3, 35), 4 * I, 1e-6);
}

TEST(MelnikovFullLine, IndependentOfTimeOffset) {
  const double base = melnikov_full_line({0.0, 1, 1.0, 1.0}, 1.0, sech2(), 1e-3, 35);
  for (double t0 : {-1.3, 0.4, 2.0}) {
    EXPECT_NEAR(melnikov_full_line({t0, 1, 1.0, 1.0}, 1.0, sech2(), 1e-3, 35), base, 1e-6) << t0;
  }
}

TEST(Legendre, AgreesWithQuadrature) {
  const auto r = melnikov_legendre_substitution(1.0, sech2());
  EXPECT_NEAR(r.value, melnikov_quadrature(1.0, sech2(), 0.0078125, 35).value, 1e-4);
  const auto& d = std::get<LegendreDiagnostics>(r.diagnostics);
  EXPECT_LT(d.tail_bound, 1e-6);
  // tanh(35) rounds to 1 and lies beyond the last node.
  EXPECT_GT(std::tanh(35.0), d.z_max);
}

TEST(Legendre, ZeroProfileGivesZero) {
  EXPECT_EQ(melnikov_legendre_substitution(1.0, PotentialProfile::zero()).value, 0.0);
}

TEST(Splitting, UnperturbedConservesEnergy) {
  const auto r = verify_splitting(1.0, {0.0}, {0.0, 1, 1.0, 1.0}, 3.0);
  EXPECT_LE(std::abs(r.samples[0].delta_h), 1e-10);
  EXPECT_TRUE(std::isnan(r.samples[0].ratio));
}

TEST(Splitting, FirstOrderAgreesWithFullLineIntegral) {
  const auto r = verify_splitting(1.0, {2e-3, 1e-3, 5e-4}, {0.0, 1, 1.0, 1.0}, 3.0);
  EXPECT_LE(r.samples[1].rel_err_full_line, 0.1);
  EXPECT_LT(r.samples[2].rel_err_full_line, r.samples[1].rel_err_full_line);
  EXPECT_LT(r.samples[1].rel_err_full_line, r.samples[0].rel_err_full_line);
  EXPECT_NEAR(r.slope, r.m_full_line, 0.05 * std::abs(r.m_full_line));
}

TEST(Splitting, VanishesOnEvenLocus) {
  const auto r = verify_splitting(1.0, {1e-3, 5e-4, 2.5e-4}, {0.0, 1, 0.0, 1.0}, 3.0);
  EXPECT_LT(std::abs(r.samples[1].ratio), 0.6 * std::abs(r.samples[0].ratio));
  EXPECT_LT(std::abs(r.samples[2].ratio), 0.6 * std::abs(r.samples[1].ratio));
}

TEST(Splitting, RejectsLargeEps) {
  try {
    verify_splitting(1.0, {0.5}, {0.0, 1, 1.0, 1.0}, 3.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}
