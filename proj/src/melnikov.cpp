#include "t4dyn/melnikov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "t4dyn/quadrature.hpp"

namespace t4 {

std::string_view to_string(MelnikovMethod m) {
  switch (m) {
    case MelnikovMethod::quadrature: return "quadrature";
    case MelnikovMethod::phase_angle: return "phase_angle";
    case MelnikovMethod::legendre_substitution: return "legendre_substitution";
  }
  return "unknown";
}

namespace {

constexpr double kPi = std::numbers::pi;

void require_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::InvalidArgument, "alpha must be positive and finite");
  }
}

/// Wraps an angle into (-pi/2, pi/2].
double wrap_half_pi(double a) {
  a = std::remainder(a, kPi);
  if (a <= -0.5 * kPi) a += kPi;
  return a;
}

/// Representative in [0, pi).
double mod_pi(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  return a;
}

struct PhaseEstimate {
  double phi = 0.0;
  double spread = 0.0;
};

/// Average of alpha * t_n mod pi taken on the doubled circle.
PhaseEstimate average_phase(const std::vector<ZeroRecord>& zeros, double alpha) {
  double s = 0.0;
  double c = 0.0;
  for (const auto& z : zeros) {
    s += std::sin(2.0 * alpha * z.t);
    c += std::cos(2.0 * alpha * z.t);
  }
  PhaseEstimate e;
  e.phi = mod_pi(0.5 * std::atan2(s, c));
  for (const auto& z : zeros) {
    e.spread = std::max(e.spread, std::abs(wrap_half_pi(alpha * z.t - e.phi)));
  }
  return e;
}

struct PhaseRun {
  PhaseAngle angle;
  PhaseDiagnostics diag;
  double wronskian = 0.0;
};

PhaseRun run_phase(double alpha, const PotentialProfile& profile, const PhaseConfig& cfg) {
  require_alpha(alpha);
  if (!(cfg.h > 0.0) || cfg.min_pairs < 1 || !(cfg.window_start >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "phase configuration out of range");
  }
  if (!hypothesis_check(profile).decays) {
    throw Error(ErrorCode::NonDecayingProfile, "profile '" + profile.name + "' does not decay");
  }
  const double end = cfg.effective_window_end(alpha);
  const VariationalField field(alpha, profile);
  const OscillatorState<double> init0(1.0, 0.0);
  const OscillatorState<double> init1(0.0, cfg.z1_slope);
  const DenseOscillator sol0(field, init0, 0.0, end, cfg.h);
  const DenseOscillator sol1(field, init1, 0.0, end, cfg.h);
  const auto traj0 = sol0.forward_trajectory();
  const auto traj1 = sol1.forward_trajectory();

  const VariationalRefine refine{&sol0.field()};
  const auto in_window = [&](std::vector<ZeroRecord> zs) {
    std::erase_if(zs, [&](const ZeroRecord& z) { return z.t < cfg.window_start || z.t > end; });
    return zs;
  };
  const auto zeros0 = in_window(locate_zeros(traj0, 0, 1, refine));
  const auto zeros1 = in_window(locate_zeros(traj1, 0, 1, refine));
  const int pairs = static_cast<int>(std::min(zeros0.size(), zeros1.size()));
  if (pairs < cfg.min_pairs) {
    throw Error(ErrorCode::InsufficientZeros,
                "found " + std::to_string(pairs) + " zero pairs in the phase window, need " +
                    std::to_string(cfg.min_pairs));
  }

  const auto e0 = average_phase(zeros0, alpha);
  const auto e1 = average_phase(zeros1, alpha);

  PhaseRun run;
  run.angle.alpha = alpha;
  run.angle.phi0 = e0.phi;
  run.angle.phi1 = e1.phi;
  run.angle.n_zeros_used = pairs;
  run.angle.spread = std::max(e0.spread, e1.spread);
  // z_j ~ a_j sin(alpha t - phi_j) gives W = alpha a0 a1 sin(phi1 - phi0) and
  // -[z0' z1' + alpha^2 z0 z1] -> -alpha^2 a0 a1 cos(phi1 - phi0), so
  // I = W alpha cot(phi0 - phi1).
  run.angle.B = mod_pi(e0.phi - e1.phi);

  run.wronskian = init0[0] * init1[1] - init1[0] * init0[1];
  const double limit_from = cfg.window_start + 5.0;
  double lim_sum = 0.0;
  double lim_min = std::numeric_limits<double>::infinity();
  double lim_max = -std::numeric_limits<double>::infinity();
  int lim_n = 0;
  for (std::size_t i = 0; i < traj0.size(); ++i) {
    const auto& a = traj0.states[i];
    const auto& b = traj1.states[i];
    const double w = a[0] * b[1] - b[0] * a[1];
    run.diag.wronskian_drift = std::max(run.diag.wronskian_drift, std::abs(w - run.wronskian));
    if (traj0.times[i] >= limit_from) {
      const double v = -(a[1] * b[1] + alpha * alpha * a[0] * b[0]);
      lim_sum += v;
      lim_min = std::min(lim_min, v);
      lim_max = std::max(lim_max, v);
      ++lim_n;
    }
  }
  run.diag.B = run.angle.B;
  run.diag.zeros_used = pairs;
  run.diag.phase_spread = run.angle.spread;
  if (lim_n > 0) {
    run.diag.limit_estimate = lim_sum / lim_n;
    run.diag.limit_spread = lim_max - lim_min;
  }
  const double predicted = run.wronskian * alpha / std::tan(run.angle.B);
  run.diag.limit_sign_consistent = std::abs(run.diag.limit_estimate) < 1e-8 ||
                                   std::signbit(predicted) == std::signbit(run.diag.limit_estimate);
  return run;
}

}  // namespace

MelnikovResult melnikov_quadrature(double alpha, const PotentialProfile& profile, double h,
                                   double T) {
  require_alpha(alpha);
  const StepperConfig cfg{h, T, Method::forest_ruth, 1};
  const long n = cfg.steps();
  const auto traj0 = forest_ruth_integrate({1.0, 0.0, 0.0, 0.0}, alpha, profile, cfg);
  const auto traj1 = forest_ruth_integrate({0.0, 1.0, 0.0, 0.0}, alpha, profile, cfg);

  double sum = 0.0;
  for (long i = 0; i <= n; ++i) {
    sum += profile.qdot(i * h) * traj0.states[i].z * traj1.states[i].z;
  }

  MelnikovResult r;
  r.alpha = alpha;
  r.value = h * sum;
  r.method = MelnikovMethod::quadrature;
  r.h = h;
  r.T = T;
  r.wronskian = 1.0;
  r.diagnostics = QuadratureDiagnostics{traj0.drift_min, traj0.drift_max, traj1.drift_min,
                                        traj1.drift_max};
  return r;
}

double PhaseConfig::effective_window_end(double alpha) const {
  return std::max(window_end, window_start + (min_pairs + 2) * kPi / alpha);
}

PhaseAngle phase_angle(double alpha, const PotentialProfile& profile, const PhaseConfig& cfg) {
  return run_phase(alpha, profile, cfg).angle;
}

MelnikovResult melnikov_limit(double alpha, const PotentialProfile& profile,
                              const PhaseConfig& cfg) {
  const PhaseRun run = run_phase(alpha, profile, cfg);
  if (std::abs(std::sin(run.angle.B)) < 1e-6) {
    throw Error(ErrorCode::PhaseNearSingular,
                "phase angle B=" + std::to_string(run.angle.B) + " makes cot(B) singular");
  }
  MelnikovResult r;
  r.alpha = alpha;
  r.value = run.wronskian * alpha / std::tan(run.angle.B);
  r.method = MelnikovMethod::phase_angle;
  r.h = cfg.h;
  r.T = cfg.effective_window_end(alpha);
  r.wronskian = run.wronskian;
  r.diagnostics = run.diag;
  return r;
}

double melnikov_m(double c0, double c1, double I) { return 2.0 * c0 * c1 * I; }

double melnikov_full_line(const SeparatrixCoords& sc, double alpha,
                          const PotentialProfile& profile, double h, double T) {
  require_alpha(alpha);
  const long n = StepperConfig{h, T, Method::rk4, 1}.steps();
  const VariationalSolutions var(alpha, profile, std::min(-T + sc.t0 - h, 0.0),
                                 std::max(T + sc.t0 + h, 0.0), h);
  std::vector<double> f(2 * n + 1);
  for (long i = 0; i <= 2 * n; ++i) {
    const double t = -T + i * h;
    f[i] = melnikov_density(separatrix_state(sc, t, var));
  }
  return simpson(f, h);
}

MelnikovResult melnikov_legendre_substitution(double alpha, const PotentialProfile& profile,
                                              const LegendreConfig& cfg) {
  require_alpha(alpha);
  if (cfg.panels < 1 || cfg.order < 1 || cfg.subdivisions < 1) {
    throw Error(ErrorCode::InvalidArgument, "Legendre quadrature configuration out of range");
  }
  const double z_max = 1.0 - std::ldexp(1.0, -cfg.panels);
  const double t_end = std::atanh(z_max);
  const VariationalSolutions var(alpha, profile, 0.0, t_end + cfg.h, cfg.h);
  const GaussRule rule = gauss_legendre(cfg.order);

  const auto integrand = [&](double z) {
    const double t = std::atanh(z);
    const double weight = profile.qdot(t) / ((1.0 - z) * (1.0 + z));
    return weight * var.y0(t)[0] * var.y1(t)[0];
  };

  double total = 0.0;
  double last_panel_max = 0.0;
  for (int k = 0; k < cfg.panels; ++k) {
    const double zl = k == 0 ? 0.0 : 1.0 - std::ldexp(1.0, -k);
    const double zr = 1.0 - std::ldexp(1.0, -(k + 1));
    const double width = (zr - zl) / cfg.subdivisions;
    for (int s = 0; s < cfg.subdivisions; ++s) {
      const double a = zl + s * width;
      const double mid = a + 0.5 * width;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = integrand(mid + 0.5 * width * rule.nodes[i]);
        total += 0.5 * width * rule.weights[i] * v;
        if (k == cfg.panels - 1) last_panel_max = std::max(last_panel_max, std::abs(v));
      }
    }
  }

  MelnikovResult r;
  r.alpha = alpha;
  r.value = total;
  r.method = MelnikovMethod::legendre_substitution;
  r.h = cfg.h;
  r.T = t_end;
  r.wronskian = 1.0;
  r.diagnostics = LegendreDiagnostics{cfg.panels, cfg.order, z_max, last_panel_max * (1.0 - z_max)};
  return r;
}

SplittingReport verify_splitting(double alpha, const std::vector<double>& eps_values,
                                 const SeparatrixCoords& sc, double T,
                                 const SplittingConfig& cfg) {
  require_alpha(alpha);
  for (double eps : eps_values) {
    if (!(eps >= 0.0 && eps <= 0.1)) {
      throw Error(ErrorCode::InvalidArgument, "splitting eps values must lie in [0, 0.1]");
    }
  }
  const PotentialProfile profile = PotentialProfile::sech2();
  const long n = 2 * StepperConfig{cfg.h, T, Method::rk4, 1}.steps();

  SplittingReport report;
  report.alpha = alpha;
  report.T = T;
  report.sc = sc;
  report.m_full_line = melnikov_full_line(sc, alpha, profile, cfg.h, T);
  report.m_formula =
      melnikov_m(sc.c0, sc.c1, melnikov_quadrature(alpha, profile, 0.0078125, 35.0).value);

  const VariationalSolutions var(alpha, profile, std::min(-T + sc.t0 - cfg.h, 0.0),
                                 std::max(T + sc.t0 + cfg.h, 0.0), cfg.h);
  const PhasePoint4<double> start = separatrix_state(sc, -T, var);
  const double h_start = duffing_energy(start);

  const auto rel = [](double value, double ref) {
    return std::abs(ref) > 0.0 ? std::abs(value - ref) / std::abs(ref) : std::abs(value - ref);
  };

  for (double eps : eps_values) {
    const auto field = [alpha, eps](double, const PhasePoint4<double>& s) {
      return field_X_eps(s, alpha, eps);
    };
    PhasePoint4<double> s = start;
    for (long i = 0; i < n; ++i) {
      s = rk4_step(field, -T + i * cfg.h, s, cfg.h);
      if (!s.allFinite() || s.cwiseAbs().maxCoeff() > cfg.escape_radius) {
        throw Error(ErrorCode::TrajectoryEscape,
                    "perturbed trajectory left the ball of radius " +
                        std::to_string(cfg.escape_radius) + " for eps=" + std::to_string(eps));
      }
    }
    SplittingSample sample;
    sample.eps = eps;
    sample.delta_h = duffing_energy(s) - h_start;
    if (eps > 0.0) {
      sample.ratio = sample.delta_h / eps;
      sample.rel_err_full_line = rel(sample.ratio, report.m_full_line);
      sample.rel_err_formula = rel(sample.ratio, report.m_formula);
    } else {
      sample.ratio = sample.rel_err_full_line = sample.rel_err_formula =
          std::numeric_limits<double>::quiet_NaN();
    }
    report.samples.push_back(sample);
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& s : report.samples) {
    sx += s.eps;
    sy += s.delta_h;
    sxx += s.eps * s.eps;
    sxy += s.eps * s.delta_h;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  if (m >= 2 && denom > 0.0) {
    report.slope = (m * sxy - sx * sy) / denom;
    report.intercept = (sy - report.slope * sx) / m;
  }
  return report;
}

}  // namespace t4
