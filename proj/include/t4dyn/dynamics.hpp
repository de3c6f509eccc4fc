#pragma once

// Vector fields and closed-form solutions of the normalized system: the
// perturbed Duffing family, its separatrix, and the transverse variational
// equation.

#include <cmath>
#include <functional>
#include <utility>

#include "t4dyn/integrators.hpp"
#include "t4dyn/profile.hpp"
#include "t4dyn/state.hpp"

namespace t4 {

/// Xdot = x, xdot = X - 2X^3 + 2 eps X Y^2, Ydot = y, ydot = [-alpha^2 + 2X^2] Y + 2 eps Y^3.
template <typename Scalar>
PhasePoint4<Scalar> field_X_eps(const PhasePoint4<Scalar>& s, Scalar alpha, Scalar eps) {
  const Scalar X = s[phase::X];
  const Scalar Y = s[phase::Y];
  PhasePoint4<Scalar> out;
  out[phase::X] = s[phase::x];
  out[phase::x] = X - Scalar(2) * X * X * X + Scalar(2) * eps * X * Y * Y;
  out[phase::Y] = s[phase::y];
  out[phase::y] = (-alpha * alpha + Scalar(2) * X * X) * Y + Scalar(2) * eps * Y * Y * Y;
  return out;
}

/// First integral h = x^2 + (X^2 - 1/2)^2 of the unperturbed Duffing factor.
template <typename Scalar>
Scalar duffing_energy(const PhasePoint4<Scalar>& s) {
  const Scalar d = s[phase::X] * s[phase::X] - Scalar(0.5);
  return s[phase::x] * s[phase::x] + d * d;
}

/// <dh, Y> for the perturbation field Y = (0, 2XY^2, 0, 2Y^3).
template <typename Scalar>
Scalar melnikov_density(const PhasePoint4<Scalar>& s) {
  return Scalar(4) * s[phase::x] * s[phase::X] * s[phase::Y] * s[phase::Y];
}

/// Point on W0(S) \ S: time offset, branch and transverse coefficients.
struct SeparatrixCoords {
  double t0 = 0.0;
  int sign = 1;
  double c0 = 0.0;
  double c1 = 0.0;
};

/// (X, x) on the homoclinic branch: X = sign sech(s), x = -sign sech(s) tanh(s).
///
/// x is the time derivative of X (one power of sech), which keeps h = 1/4.
inline std::pair<double, double> separatrix_duffing(int sign, double s) {
  const double sech = 1.0 / std::cosh(s);
  return {sign * sech, -sign * sech * std::tanh(s)};
}

/// Right-hand side (z, zdot)' = (zdot, -[alpha^2 - q(t)] z).
class VariationalField {
 public:
  VariationalField(double alpha, PotentialProfile profile)
      : alpha_sq_(alpha * alpha), profile_(std::move(profile)) {}

  OscillatorState<double> operator()(double t, const OscillatorState<double>& s) const {
    return {s[1], -(alpha_sq_ - profile_.q(t)) * s[0]};
  }

 private:
  double alpha_sq_;
  PotentialProfile profile_;
};

/// RK4 refinement step used by zero location and dense output.
struct VariationalRefine {
  const VariationalField* field;
  OscillatorState<double> operator()(const OscillatorState<double>& s, double t, double dt) const {
    return rk4_step(*field, t, s, dt);
  }
};

using DenseOscillator = DenseRk4<OscillatorState<double>, VariationalField>;

/// Fundamental pair Y0 (Y(0)=1, Ydot(0)=0) and Y1 (Y(0)=0, Ydot(0)=1) on
/// [t_min, t_max], integrated from t = 0 in both directions with RK4.
class VariationalSolutions {
 public:
  VariationalSolutions(double alpha, const PotentialProfile& profile, double t_min, double t_max,
                       double h);

  double alpha() const { return alpha_; }
  double t_min() const { return y0_.t_min(); }
  double t_max() const { return y0_.t_max(); }

  OscillatorState<double> y0(double t) const { return y0_(t); }
  OscillatorState<double> y1(double t) const { return y1_(t); }
  /// c0 Y0 + c1 Y1 and its derivative.
  OscillatorState<double> combined(double c0, double c1, double t) const {
    return c0 * y0_(t) + c1 * y1_(t);
  }

  const DenseOscillator& even() const { return y0_; }
  const DenseOscillator& odd() const { return y1_; }

 private:
  double alpha_;
  DenseOscillator y0_;
  DenseOscillator y1_;
};

/// Point of the unperturbed flow at time t on the separatrix branch described by sc.
PhasePoint4<double> separatrix_state(const SeparatrixCoords& sc, double t,
                                     const VariationalSolutions& variational);

}  // namespace t4
