#pragma once

#include <functional>
#include <string>

namespace t4 {

/// Time-dependent potential q(t) of zddot + [alpha^2 - q(t)] z = 0 with its
/// derivative in closed form.
struct PotentialProfile {
  std::string name;
  std::function<double(double)> q;
  std::function<double(double)> qdot;
  /// |q(t)| < 0.01 max|q| for t >= decay_time.
  double decay_time = 0.0;

  double operator()(double t) const { return q(t); }

  /// amplitude * sech(t)^2; the canonical profile uses amplitude 2.
  static PotentialProfile sech2(double amplitude = 2.0);
  static PotentialProfile zero();
  /// t * exp(-t), a decaying profile that is neither even nor monotone.
  static PotentialProfile t_exp();
};

struct HypothesisReport {
  bool even = false;
  bool monotone = false;
  bool decays = false;
  double max_even_defect = 0.0;
  /// Fit |q(t)| ~ fit_c * exp(-fit_rate * t) over the fit window; rate is +inf for q == 0.
  double fit_c = 0.0;
  double fit_rate = 0.0;
};

struct HypothesisConfig {
  double t_max = 40.0;
  int samples = 4001;
  double fit_lo = 5.0;
  double fit_hi = 20.0;
};

/// Samples q and reports evenness, monotone decay on [0, inf) and an exponential envelope fit.
HypothesisReport hypothesis_check(const PotentialProfile& profile, const HypothesisConfig& cfg = {});

}  // namespace t4
