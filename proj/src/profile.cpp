#include "t4dyn/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace t4 {

PotentialProfile PotentialProfile::sech2(double amplitude) {
  PotentialProfile p;
  p.name = "sech2";
  p.q = [amplitude](double t) {
    const double s = 1.0 / std::cosh(t);
    return amplitude * s * s;
  };
  p.qdot = [amplitude](double t) {
    const double s = 1.0 / std::cosh(t);
    return -2.0 * amplitude * s * s * std::tanh(t);
  };
  // sech(t)^2 < 0.01 once cosh(t) > 10.
  p.decay_time = std::acosh(10.0);
  return p;
}

PotentialProfile PotentialProfile::zero() {
  PotentialProfile p;
  p.name = "zero";
  p.q = [](double) { return 0.0; };
  p.qdot = [](double) { return 0.0; };
  p.decay_time = 0.0;
  return p;
}

PotentialProfile PotentialProfile::t_exp() {
  PotentialProfile p;
  p.name = "t_exp";
  p.q = [](double t) { return t * std::exp(-t); };
  p.qdot = [](double t) { return (1.0 - t) * std::exp(-t); };
  p.decay_time = 7.0;
  return p;
}

HypothesisReport hypothesis_check(const PotentialProfile& profile, const HypothesisConfig& cfg) {
  HypothesisReport r;
  const int n = std::max(cfg.samples, 2);
  const double dt = cfg.t_max / (n - 1);

  std::vector<double> ts(n), qs(n);
  double q_max = 0.0;
  for (int i = 0; i < n; ++i) {
    ts[i] = i * dt;
    qs[i] = profile.q(ts[i]);
    q_max = std::max(q_max, std::abs(qs[i]));
    r.max_even_defect = std::max(r.max_even_defect, std::abs(qs[i] - profile.q(-ts[i])));
  }
  r.even = r.max_even_defect <= 1e-12;

  r.monotone = true;
  for (int i = 1; i < n; ++i) {
    if (qs[i] > qs[i - 1]) {
      r.monotone = false;
      break;
    }
  }

  r.decays = true;
  for (int i = 0; i < n; ++i) {
    if (ts[i] >= profile.decay_time && std::abs(qs[i]) >= 0.01 * q_max && q_max > 0.0) {
      r.decays = false;
      break;
    }
  }

  // Least-squares line through log|q| on the fit window.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (int i = 0; i < n; ++i) {
    if (ts[i] < cfg.fit_lo || ts[i] > cfg.fit_hi) continue;
    const double aq = std::abs(qs[i]);
    if (!(aq > 0.0)) continue;
    const double y = std::log(aq);
    sx += ts[i];
    sy += y;
    sxx += ts[i] * ts[i];
    sxy += ts[i] * y;
    ++m;
  }
  if (m >= 2) {
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    r.fit_rate = -slope;
    r.fit_c = std::exp(intercept);
  } else {
    r.fit_rate = std::numeric_limits<double>::infinity();
    r.fit_c = 0.0;
  }
  return r;
}

}  // namespace t4
