#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "t4dyn/dynamics.hpp"
#include "t4dyn/integrators.hpp"

using namespace t4;

namespace {

constexpr double kPi = std::numbers::pi;

const auto harmonic = [](double, const OscillatorState<double>& s) {
  return OscillatorState<double>(s[1], -s[0]);
};

double fr_drift(double h, double T, const PotentialProfile& q = PotentialProfile::sech2()) {
  return forest_ruth_integrate({1, 0, 0, 0}, 1.0, q, StepperConfig{h, T, Method::forest_ruth, 1}).drift();
}

}  // namespace

TEST(StepperConfig, GridAlignment) {
  EXPECT_EQ((StepperConfig{0.0078125, 35.0}.steps()), 4480);
  EXPECT_EQ((StepperConfig{1e-3, 100.0}.steps()), 100000);
  try {
    StepperConfig{0.3, 35.0}.steps();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
  EXPECT_THROW((StepperConfig{-1.0, 35.0}.steps()), Error);
}

TEST(ForestRuth, TableDriftAnchors) {
  EXPECT_NEAR(fr_drift(0.5, 35), 0.00974849, 1e-8);
  EXPECT_NEAR(fr_drift(0.25, 35), 0.00055977, 1e-8);
}

TEST(ForestRuth, FourthOrderDriftRatios) {
  double prev = fr_drift(0.25, 35);
  for (double h : {0.125, 0.0625, 0.03125}) {
    const double d = fr_drift(h, 35);
    EXPECT_GE(prev / d, 12.0) << h;
    EXPECT_LE(prev / d, 20.0) << h;
    prev = d;
  }
}

TEST(ForestRuth, NoSecularDrift) {
  EXPECT_LE(fr_drift(0.0625, 70), 3 * fr_drift(0.0625, 35));
}

TEST(ForestRuth, HarmonicPeriod) {
  const double h = 2 * kPi / 6283;
  const auto traj = forest_ruth_integrate({1, 0, 0, 0}, 1.0, PotentialProfile::zero(),
                                          StepperConfig{h, 2 * kPi, Method::forest_ruth, 1});
  EXPECT_LE(traj.drift(), 1e-12);
  EXPECT_NEAR(traj.states.back().z, 1.0, 1e-11);
  EXPECT_NEAR(traj.states.back().p, 0.0, 1e-11);
  EXPECT_NEAR(traj.states.back().tau, 2 * kPi, 1e-11);
}

TEST(ForestRuth, ThetaValue) {
  const double theta = forest_ruth_theta();
  EXPECT_DOUBLE_EQ(theta, 1.0 / (2.0 - std::cbrt(2.0)));
  EXPECT_NEAR(theta, 1.3512071919596578, 1e-15);
}

TEST(ForestRuth, RejectsRk4Config) {
  EXPECT_THROW(forest_ruth_integrate({1, 0, 0, 0}, 1.0, PotentialProfile::sech2(),
                                     StepperConfig{0.5, 35.0, Method::rk4, 1}),
               Error);
}

TEST(Rk4, HarmonicPeriod) {
  const double h = 2 * kPi / 6283;
  const auto traj = rk4_integrate(OscillatorState<double>(1, 0), harmonic, StepperConfig{h, 2 * kPi});
  EXPECT_LE((traj.states.back() - OscillatorState<double>(1, 0)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Rk4, SeparatrixEnergy) {
  const auto f = [](double, const PhasePoint4<double>& p) { return field_X_eps(p, 1.0, 0.0); };
  const auto traj = rk4_integrate(PhasePoint4<double>(1, 0, 0, 0), f, StepperConfig{1e-4, 10.0, Method::rk4, 10},
                                  [](double, const PhasePoint4<double>& p) { return duffing_energy(p); });
  EXPECT_LE(std::abs(traj.drift_min - 0.25), 1e-6);
  EXPECT_LE(std::abs(traj.drift_max - 0.25), 1e-6);
}

TEST(Rk4, MatchesForestRuthOnVariationalEquation) {
  const auto q = PotentialProfile::sech2();
  const auto fr = forest_ruth_integrate({1, 0, 0, 0}, 1.0, q, StepperConfig{1e-3, 35.0, Method::forest_ruth, 1});
  const VariationalSolutions var(1.0, q, 0.0, 35.0, 1e-3);
  for (std::size_t i = 0; i < fr.size(); ++i) {
    ASSERT_NEAR(fr.states[i].z, var.even().state_at(i)[0], 1e-6) << fr.times[i];
  }
}

TEST(Rk4, TimeReversal) {
  const auto q = PotentialProfile::sech2();
  const VariationalField f(1.0, q);
  const OscillatorState<double> y0(0.3, -1.1);
  const auto fwd = rk4_integrate(y0, f, StepperConfig{1e-3, 10.0});
  OscillatorState<double> y = fwd.states.back();
  for (long i = 10000; i > 0; --i) y = rk4_step(f, i * 1e-3, y, -1e-3);
  EXPECT_LE((y - y0).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Rk4, NonfiniteStateIsReported) {
  const auto blowup = [](double, const Eigen::Matrix<double, 1, 1>& y) {
    return Eigen::Matrix<double, 1, 1>(y[0] * y[0]);
  };
  try {
    rk4_integrate(Eigen::Matrix<double, 1, 1>(1.0), blowup, StepperConfig{1e-2, 3.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonfiniteState);
  }
}

TEST(Dense, InterpolatesBetweenGridPoints) {
  const DenseRk4<OscillatorState<double>, decltype(harmonic)> dense(harmonic, OscillatorState<double>(0, 1),
                                                                    -5.0, 5.0, 1e-2);
  for (double t = -5.0; t <= 5.0; t += 0.0123) {
    EXPECT_NEAR(dense(t)[0], std::sin(t), 1e-9);
  }
  EXPECT_THROW(dense(6.0), Error);
}

TEST(Zeros, SineZerosAreMultiplesOfPi) {
  const auto traj = rk4_integrate(OscillatorState<double>(0, 1), harmonic, StepperConfig{1e-3, 20.0});
  const auto refine = [](const OscillatorState<double>& s, double t, double dt) {
    return rk4_step(harmonic, t, s, dt);
  };
  const auto zeros = locate_zeros(traj, 0, 1, refine);
  ASSERT_EQ(zeros.size(), 7u);
  for (std::size_t n = 0; n < zeros.size(); ++n) {
    EXPECT_EQ(zeros[n].index, static_cast<int>(n));
    EXPECT_NEAR(zeros[n].t, n * kPi, 1e-10);
    EXPECT_LE(zeros[n].t_lo, zeros[n].t);
    EXPECT_GE(zeros[n].t_hi, zeros[n].t);
    EXPECT_LE(zeros[n].t_hi - zeros[n].t_lo, 1e-12);
    if (n > 0) {
      EXPECT_NEAR(zeros[n].t - zeros[n - 1].t, kPi, 1e-10);
      EXPECT_LT(zeros[n].slope * zeros[n - 1].slope, 0.0);
    }
  }
}

TEST(Zeros, EmptyTrajectory) {
  const Trajectory<OscillatorState<double>> empty;
  const auto refine = [](const OscillatorState<double>& s, double, double) { return s; };
  EXPECT_TRUE(locate_zeros(empty, 0, 1, refine).empty());
}

TEST(Zeros, FlatCrossingIsSuspectedDoubleZero) {
  Trajectory<OscillatorState<double>> traj;
  traj.push(0.0, OscillatorState<double>(-1, 0), 0);
  traj.push(1.0, OscillatorState<double>(1, 0), 0);
  const auto refine = [](const OscillatorState<double>&, double, double dt) {
    return OscillatorState<double>(-1 + 2 * dt, 0.0);
  };
  try {
    locate_zeros(traj, 0, 1, refine);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SuspectedDoubleZero);
  }
}

TEST(Zeros, LateZerosOfOddSolutionObeySturmBounds) {
  const auto q = PotentialProfile::sech2();
  const VariationalSolutions var(1.0, q, 0.0, 40.0, 1e-3);
  const auto traj = var.odd().forward_trajectory();
  const VariationalRefine refine{&var.odd().field()};
  const auto zeros = locate_zeros(traj, 0, 1, refine);
  ASSERT_GE(zeros.size(), 10u);
  for (std::size_t n = 1; n < zeros.size(); ++n) {
    if (q.q(zeros[n - 1].t) > 0.5) continue;
    const double gap = zeros[n].t - zeros[n - 1].t;
    EXPECT_GT(gap, kPi - 1e-9) << zeros[n].t;
    EXPECT_LT(gap, kPi * (1 + q.q(zeros[n - 1].t)) + 1e-9) << zeros[n].t;
  }
}
