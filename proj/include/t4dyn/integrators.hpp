#pragma once

// Fixed-step time integration: classical RK4 for general fields, the
// fourth-order Forest-Ruth composition for the extended oscillator
// Hamiltonian, dense output and zero location by interval halving.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "t4dyn/error.hpp"
#include "t4dyn/profile.hpp"
#include "t4dyn/state.hpp"

namespace t4 {

enum class Method { forest_ruth, rk4 };

struct StepperConfig {
  double h = 1e-3;
  double T = 1.0;
  Method method = Method::rk4;
  int record_stride = 1;

  /// Number of steps N with N*h == T; throws GridMismatch unless T/h is integral.
  long steps() const {
    if (!(h > 0.0) || !(T > 0.0) || record_stride < 1) {
      throw Error(ErrorCode::InvalidArgument, "step h, horizon T and record_stride must be positive");
    }
    const double ratio = T / h;
    const double n = std::round(ratio);
    if (std::abs(ratio - n) > 1e-12 * std::max(1.0, ratio)) {
      throw Error(ErrorCode::GridMismatch,
                  "horizon T=" + std::to_string(T) + " is not an integer multiple of h=" +
                      std::to_string(h) + " (T/h must be integral)");
    }
    return static_cast<long>(n);
  }
};

template <typename State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;
  /// Designated invariant sampled alongside every recorded state.
  std::vector<double> conserved;
  double drift_min = 0.0;
  double drift_max = 0.0;

  bool empty() const { return times.empty(); }
  std::size_t size() const { return times.size(); }
  double drift() const { return drift_max - drift_min; }

  void push(double t, const State& s, double invariant) {
    times.push_back(t);
    states.push_back(s);
    conserved.push_back(invariant);
    if (conserved.size() == 1) {
      drift_min = drift_max = invariant;
    } else {
      drift_min = std::min(drift_min, invariant);
      drift_max = std::max(drift_max, invariant);
    }
  }
};

template <typename Derived>
bool is_finite(const Eigen::MatrixBase<Derived>& s) {
  return s.allFinite();
}

template <typename Scalar>
bool is_finite(const ExtendedState<Scalar>& s) {
  using std::isfinite;
  return isfinite(s.z) && isfinite(s.p) && isfinite(s.tau) && isfinite(s.u);
}

/// One classical RK4 step of y' = f(t, y); h may be negative.
template <typename State, typename Field>
State rk4_step(const Field& f, double t, const State& y, double h) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, State(y + (0.5 * h) * k1));
  const State k3 = f(t + 0.5 * h, State(y + (0.5 * h) * k2));
  const State k4 = f(t + h, State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct NoInvariant {
  template <typename State>
  double operator()(double, const State&) const {
    return 0.0;
  }
};

/// Fixed-step RK4 on [t0, t0 + T]; records every record_stride-th state plus the last.
template <typename State, typename Field, typename Invariant = NoInvariant>
Trajectory<State> rk4_integrate(const State& initial, const Field& field, const StepperConfig& cfg,
                                const Invariant& invariant = {}, double t0 = 0.0) {
  if (cfg.method != Method::rk4) {
    throw Error(ErrorCode::InvalidArgument, "rk4_integrate requires method rk4");
  }
  const long n = cfg.steps();
  Trajectory<State> traj;
  traj.times.reserve(n / cfg.record_stride + 2);
  traj.states.reserve(n / cfg.record_stride + 2);
  traj.conserved.reserve(n / cfg.record_stride + 2);

  State y = initial;
  traj.push(t0, y, invariant(t0, y));
  for (long i = 1; i <= n; ++i) {
    const double t = t0 + (i - 1) * cfg.h;
    y = rk4_step(field, t, y, cfg.h);
    if (!is_finite(y)) {
      throw Error(ErrorCode::NonfiniteState, "state overflowed at t=" + std::to_string(t + cfg.h));
    }
    if (i % cfg.record_stride == 0 || i == n) {
      const double ti = t0 + i * cfg.h;
      traj.push(ti, y, invariant(ti, y));
    }
  }
  return traj;
}

/// Theta = 1/(2 - 2^(1/3)) of the Forest-Ruth composition.
double forest_ruth_theta();

/// One drift-kick Forest-Ruth step for H = 1/2 p^2 + 1/2 [alpha^2 - q(tau)] z^2 + u.
ExtendedState<double> forest_ruth_step(const ExtendedState<double>& s, double alpha,
                                       const PotentialProfile& profile, double h);

/// Extended Hamiltonian 1/2 p^2 + 1/2 [alpha^2 - q(tau)] z^2 + u.
double extended_hamiltonian(const ExtendedState<double>& s, double alpha,
                            const PotentialProfile& profile);

/// Forest-Ruth integration on [0, T] recording the extended Hamiltonian at every step.
Trajectory<ExtendedState<double>> forest_ruth_integrate(const ExtendedState<double>& initial,
                                                        double alpha,
                                                        const PotentialProfile& profile,
                                                        const StepperConfig& cfg);

/// Uniform-grid solution with dense evaluation by a single RK4 step from the
/// grid point at or below the query time.
template <typename State, typename Field>
class DenseRk4 {
 public:
  /// Integrates forward to t_max and backward to t_min from the initial state at t = 0.
  DenseRk4(Field field, const State& initial, double t_min, double t_max, double h)
      : field_(std::move(field)), h_(h) {
    if (!(h > 0.0) || t_min > 0.0 || t_max < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "dense grid needs h > 0 and t_min <= 0 <= t_max");
    }
    const long nb = static_cast<long>(std::ceil(-t_min / h - 1e-9));
    const long nf = static_cast<long>(std::ceil(t_max / h - 1e-9));
    first_index_ = -nb;
    states_.resize(nb + nf + 1);
    states_[nb] = initial;
    for (long i = 1; i <= nf; ++i) {
      states_[nb + i] = rk4_step(field_, (i - 1) * h, states_[nb + i - 1], h);
      check(states_[nb + i]);
    }
    for (long i = 1; i <= nb; ++i) {
      states_[nb - i] = rk4_step(field_, -(i - 1) * h, states_[nb - i + 1], -h);
      check(states_[nb - i]);
    }
  }

  double h() const { return h_; }
  double t_min() const { return first_index_ * h_; }
  double t_max() const { return (first_index_ + static_cast<long>(states_.size()) - 1) * h_; }
  std::size_t size() const { return states_.size(); }

  double time_at(std::size_t i) const { return (first_index_ + static_cast<long>(i)) * h_; }
  const State& state_at(std::size_t i) const { return states_[i]; }

  State operator()(double t) const {
    if (t < t_min() - 1e-12 || t > t_max() + 1e-12) {
      throw Error(ErrorCode::InvalidArgument, "dense query outside the integrated interval");
    }
    long k = static_cast<long>(std::floor(t / h_));
    k = std::clamp(k, first_index_, first_index_ + static_cast<long>(states_.size()) - 1);
    const std::size_t i = static_cast<std::size_t>(k - first_index_);
    const double dt = t - k * h_;
    if (dt == 0.0) return states_[i];
    return rk4_step(field_, k * h_, states_[i], dt);
  }

  /// Forward-only trajectory view of the grid on [0, t_max].
  template <typename Invariant = NoInvariant>
  Trajectory<State> forward_trajectory(const Invariant& invariant = {}) const {
    Trajectory<State> traj;
    for (std::size_t i = static_cast<std::size_t>(-first_index_); i < states_.size(); ++i) {
      traj.push(time_at(i), states_[i], invariant(time_at(i), states_[i]));
    }
    return traj;
  }

  const Field& field() const { return field_; }

 private:
  static void check(const State& s) {
    if (!is_finite(s)) throw Error(ErrorCode::NonfiniteState, "dense solution overflowed");
  }

  Field field_;
  double h_;
  long first_index_ = 0;
  std::vector<State> states_;
};

struct ZeroRecord {
  int index = 0;
  double t = 0.0;
  double slope = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

/// Brackets every sign change of states[component] and halves the bracket to
/// `width`, re-integrating from the grid point that opens the bracket with
/// refine(state, t, dt). The slope is read from states[slope_component].
template <typename State, typename Refine>
std::vector<ZeroRecord> locate_zeros(const Trajectory<State>& traj, int component,
                                     int slope_component, const Refine& refine,
                                     double width = 1e-12) {
  std::vector<ZeroRecord> zeros;
  const auto sgn = [](double v) { return (v > 0.0) - (v < 0.0); };
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double yi = traj.states[i][component];
    ZeroRecord rec;
    if (yi == 0.0) {
      rec.t = rec.t_lo = rec.t_hi = traj.times[i];
      rec.slope = traj.states[i][slope_component];
    } else if (i + 1 < traj.size() && sgn(yi) * sgn(traj.states[i + 1][component]) < 0) {
      const double t0 = traj.times[i];
      double lo = t0;
      double hi = traj.times[i + 1];
      const int s_lo = sgn(yi);
      while (hi - lo > width) {
        const double mid = lo + 0.5 * (hi - lo);
        if (mid <= lo || mid >= hi) break;
        const double ym = refine(traj.states[i], t0, mid - t0)[component];
        if (ym == 0.0) {
          lo = hi = mid;
          break;
        }
        (sgn(ym) == s_lo ? lo : hi) = mid;
      }
      rec.t_lo = lo;
      rec.t_hi = hi;
      rec.t = 0.5 * (lo + hi);
      rec.slope = refine(traj.states[i], t0, rec.t - t0)[slope_component];
    } else {
      continue;
    }
    if (std::abs(rec.slope) < 1e-10) {
      throw Error(ErrorCode::SuspectedDoubleZero,
                  "sign change with vanishing slope near t=" + std::to_string(rec.t));
    }
    rec.index = static_cast<int>(zeros.size());
    zeros.push_back(rec);
  }
  return zeros;
}

}  // namespace t4
