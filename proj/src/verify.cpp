#include "t4dyn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "t4dyn/dynamics.hpp"
#include "t4dyn/lie_poisson.hpp"
#include "t4dyn/melnikov.hpp"

namespace t4 {

namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
 public:
  explicit Suite(std::string name) : name_(std::move(name)) {}

  void at_most(std::string check, double value, double tol) {
    results_.push_back({name_, std::move(check), value <= tol, value, tol});
  }
  void holds(std::string check, bool ok, double value = 0.0, double tol = 0.0) {
    results_.push_back({name_, std::move(check), ok, value, tol});
  }

  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::string name_;
  std::vector<CheckResult> results_;
};

CoadjointPoint random_point(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> d(-scale, scale);
  CoadjointPoint p;
  for (int i = 0; i < 6; ++i) p[i] = d(rng);
  return p;
}

std::vector<CheckResult> poisson_suite() {
  Suite s("poisson");

  int jacobi = 0;
  int skew = 0;
  for (int i = 0; i < basis::dim; ++i) {
    for (int j = 0; j < basis::dim; ++j) {
      for (int k = 0; k < basis::dim; ++k) {
        skew = std::max(skew, std::abs(structure_constant(i, j, k) + structure_constant(j, i, k)));
        for (int n = 0; n < basis::dim; ++n) {
          int sum = 0;
          for (int m = 0; m < basis::dim; ++m) {
            sum += structure_constant(i, j, m) * structure_constant(m, k, n) +
                   structure_constant(j, k, m) * structure_constant(m, i, n) +
                   structure_constant(k, i, m) * structure_constant(m, j, n);
          }
          jacobi = std::max(jacobi, std::abs(sum));
        }
      }
    }
  }
  s.holds("jacobi_identity_basis_triples", jacobi == 0, jacobi, 0);
  s.holds("skew_symmetry_basis_pairs", skew == 0, skew, 0);

  std::mt19937_64 rng(20240611);
  double euler_k = 0.0;
  double euler_h = 0.0;
  for (const auto& metric : {DiagonalMetric<double>::riemannian(),
                             DiagonalMetric<double>::subriemannian()}) {
    const CoadjointPoint p0 = random_point(rng, 1.0);
    const auto field = [&metric](double, const CoadjointPoint& p) { return euler_field(metric, p); };
    const auto traj = rk4_integrate(p0, field, StepperConfig{1e-3, 100.0, Method::rk4, 10});
    const auto k0 = casimirs(p0);
    const double h0 = metric.hamiltonian(p0);
    for (const auto& p : traj.states) {
      const auto k = casimirs(p);
      euler_k = std::max({euler_k, std::abs(k.k1 - k0.k1), std::abs(k.k2 - k0.k2)});
      euler_h = std::max(euler_h, std::abs(metric.hamiltonian(p) - h0));
    }
  }
  s.at_most("euler_casimir_drift_T100", euler_k, 1e-8);
  s.at_most("euler_energy_drift_T100", euler_h, 1e-8);

  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_real_distribution<double> scale(0.5, 2.0);
  double roundtrip = 0.0;
  for (int n = 0; n < 100; ++n) {
    const OrbitId<double> k{(n % 2 ? 1.0 : -1.0) * scale(rng), coord(rng)};
    const ChartPoint<double> q{coord(rng), coord(rng), coord(rng), coord(rng), scale(rng), scale(rng)};
    const auto back = chart_to_canonical(chart_from_canonical(q, k), k, q.lambda, q.mu);
    roundtrip = std::max(roundtrip, (back.coords() - q.coords()).cwiseAbs().maxCoeff());
  }
  s.at_most("chart_roundtrip", roundtrip, 1e-12);

  // Pushforward of the Euler field through the chart versus the canonical field.
  double conj = 0.0;
  const auto metric = DiagonalMetric<double>::riemannian();
  for (int n = 0; n < 20; ++n) {
    const OrbitId<double> k{scale(rng), scale(rng)};
    const ChartPoint<double> q{coord(rng) / 5, coord(rng) / 5, coord(rng) / 5, coord(rng) / 5,
                               std::sqrt(2.0), std::sqrt(2.0)};
    const CoadjointPoint p = chart_from_canonical(q, k);
    const CoadjointPoint e = euler_field(metric, p);
    const double step = 1e-6;
    const auto fk = [&](const CoadjointPoint& x) {
      return chart_to_canonical(x, casimirs(x), q.lambda, q.mu).coords();
    };
    // Directional derivative of the chart along the Euler field.
    const Eigen::Vector4d push = (fk(p + step * e) - fk(p - step * e)) / (2 * step);
    const Eigen::Vector4d canon = canonical_field(metric, k, q);
    conj = std::max(conj, (push - canon).norm() / std::max(1.0, canon.norm()));
  }
  s.at_most("chart_conjugacy", conj, 1e-5);
  return s.take();
}

std::vector<CheckResult> separatrix_suite() {
  Suite s("separatrix");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t_dist(-20.0, 20.0);
  std::uniform_real_distribution<double> t0_dist(-5.0, 5.0);
  double analytic = 0.0;
  for (int n = 0; n < 200; ++n) {
    const auto [X, x] = separatrix_duffing(n % 2 ? 1 : -1, t_dist(rng) + t0_dist(rng));
    analytic = std::max(analytic, std::abs(duffing_energy(PhasePoint4<double>(X, x, 0, 0)) - 0.25));
  }
  s.at_most("separatrix_h_quarter_analytic", analytic, 1e-10);

  const auto field0 = [](double, const PhasePoint4<double>& p) { return field_X_eps(p, 1.0, 0.0); };
  const auto traj = rk4_integrate(PhasePoint4<double>(1, 0, 0, 0), field0,
                                  StepperConfig{1e-4, 10.0, Method::rk4, 100});
  double along = 0.0;
  double closed = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    along = std::max(along, std::abs(duffing_energy(traj.states[i]) - 0.25));
    closed = std::max(closed, std::abs(traj.states[i][phase::X] - 1.0 / std::cosh(traj.times[i])));
  }
  s.at_most("separatrix_h_quarter_integrated", along, 1e-6);
  s.at_most("separatrix_matches_sech", closed, 1e-6);

  double s_leak = 0.0;
  for (double eps : {0.0, 0.5, 1.0}) {
    const auto f = [eps](double, const PhasePoint4<double>& p) { return field_X_eps(p, 1.0, eps); };
    const auto tr = rk4_integrate(PhasePoint4<double>(0, 0, 0.3, 0.2), f,
                                  StepperConfig{1e-3, 50.0, Method::rk4, 1});
    for (const auto& p : tr.states) {
      s_leak = std::max(s_leak, std::abs(p[phase::X]) + std::abs(p[phase::x]));
    }
  }
  s.at_most("S_invariance", s_leak, 1e-10);
  return s.take();
}

std::vector<CheckResult> variational_suite() {
  Suite s("variational");
  const auto q = PotentialProfile::sech2();
  const VariationalSolutions var(1.0, q, -35.0, 35.0, 1e-3);

  double parity = 0.0;
  double wronskian = 0.0;
  for (double t = 0.0; t <= 35.0; t += 0.05) {
    if (t <= 10.0) {
      parity = std::max({parity, std::abs(var.y0(-t)[0] - var.y0(t)[0]),
                         std::abs(var.y1(-t)[0] + var.y1(t)[0])});
    }
    for (double u : {t, -t}) {
      const auto a = var.y0(u);
      const auto b = var.y1(u);
      wronskian = std::max(wronskian, std::abs(a[0] * b[1] - b[0] * a[1] - 1.0));
    }
  }
  s.at_most("parity", parity, 1e-8);
  s.at_most("unit_wronskian", wronskian, 1e-8);

  const VariationalRefine refine{&var.even().field()};
  const auto z0 = locate_zeros(var.even().forward_trajectory(), 0, 1, refine);
  const auto z1 = locate_zeros(var.odd().forward_trajectory(), 0, 1, refine);

  // pi/alpha < t_{n+1} - t_n < pi/alpha (1 + q(t_n)/alpha^2) wherever q < alpha^2/2 beyond t_n.
  const double slack = 1e-9;
  bool sturm = true;
  double worst = 0.0;
  int checked = 0;
  for (const auto* zs : {&z0, &z1}) {
    for (std::size_t n = 0; n + 1 < zs->size(); ++n) {
      const double tn = (*zs)[n].t;
      if (q(tn) >= 0.5) continue;
      const double gap = (*zs)[n + 1].t - tn;
      const double lo = kPi;
      const double hi = kPi * (1.0 + q(tn));
      sturm = sturm && gap > lo - slack && gap < hi + slack;
      worst = std::max({worst, lo - gap, gap - hi});
      ++checked;
    }
  }
  s.holds("sturm_zero_spacing", sturm && checked >= 10, worst, slack);

  std::vector<std::pair<double, int>> merged;
  for (const auto& z : z0) merged.emplace_back(z.t, 0);
  for (const auto& z : z1) {
    if (z.t > 0.0) merged.emplace_back(z.t, 1);
  }
  std::sort(merged.begin(), merged.end());
  bool interlaced = merged.size() > 4;
  for (std::size_t i = 1; i < merged.size(); ++i) {
    interlaced = interlaced && merged[i].second != merged[i - 1].second;
  }
  s.holds("zero_interlacing", interlaced, static_cast<double>(merged.size()));

  double slopes = 0.0;
  for (const auto* zs : {&z0, &z1}) {
    for (std::size_t n = 0; n + 1 < zs->size(); ++n) {
      if ((*zs)[n].slope * (*zs)[n + 1].slope >= 0.0) slopes += 1.0;
    }
  }
  s.at_most("alternating_zero_slopes", slopes, 0.0);

  double bounded = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const VariationalField f(alpha, q);
    double early = 0.0;
    double late = 0.0;
    for (const auto& init : {OscillatorState<double>(1, 0), OscillatorState<double>(0, 1)}) {
      const auto tr = rk4_integrate(init, f, StepperConfig{1e-3, 200.0, Method::rk4, 1});
      for (std::size_t i = 0; i < tr.size(); ++i) {
        const double m = tr.states[i].cwiseAbs().maxCoeff();
        late = std::max(late, m);
        if (tr.times[i] <= 20.0) early = std::max(early, m);
      }
    }
    bounded = std::max(bounded, late / early);
  }
  s.at_most("bounded_solutions_ratio", bounded, 2.0);

  const OscillatorState<double> init(0.7, -1.3);
  const DenseOscillator direct(VariationalField(1.0, q), init, 0.0, 35.0, 1e-3);
  double linear = 0.0;
  for (double t = 0.0; t <= 35.0; t += 0.25) {
    linear = std::max(linear, (direct(t) - var.combined(0.7, -1.3, t)).cwiseAbs().maxCoeff());
  }
  s.at_most("linearity_in_initial_data", linear, 1e-10);

  const VariationalSolutions harmonic(1.0, PotentialProfile::zero(), 0.0, 10.0, 1e-3);
  double harm = 0.0;
  for (double t = 0.0; t <= 10.0; t += 0.01) {
    harm = std::max({harm, std::abs(harmonic.y0(t)[0] - std::cos(t)),
                     std::abs(harmonic.y1(t)[0] - std::sin(t))});
  }
  s.at_most("harmonic_cos_sin", harm, 1e-8);
  return s.take();
}

std::vector<CheckResult> melnikov_suite() {
  Suite s("melnikov");
  const auto q = PotentialProfile::sech2();

  const double i_half = melnikov_quadrature(1.0, q, 0.5, 35.0).value;
  s.at_most("table1_h0.5", std::abs(i_half - (-2.76812630)), 1e-6);
  const double i_025 = melnikov_quadrature(1.0, q, 0.25, 35.0).value;
  const double i_0125 = melnikov_quadrature(1.0, q, 0.125, 35.0).value;
  const double i_00625 = melnikov_quadrature(1.0, q, 0.0625, 35.0).value;
  const double order = std::log2((i_025 - i_0125) / (i_0125 - i_00625));
  s.holds("convergence_order_h0.125", order >= 3.5 && order <= 4.5, order, 4.0);

  const double i_fine = melnikov_quadrature(1.0, q, 0.0078125, 35.0).value;
  for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
    const double iq =
        alpha == 1.0 ? i_fine : melnikov_quadrature(alpha, q, 0.0078125, 35.0).value;
    const double il = melnikov_limit(alpha, q).value;
    s.at_most("method_agreement_alpha" + std::to_string(alpha).substr(0, 3), std::abs(iq - il),
              5e-3);
  }

  const double b10 = phase_angle(10.0, q).B;
  s.at_most("phase_asymptote_alpha10", std::abs(b10 - 0.5 * kPi), 0.05);

  PhaseConfig fine;
  fine.h = 5e-4;
  s.at_most("phase_step_halving_alpha1",
            std::abs(phase_angle(1.0, q).B - phase_angle(1.0, q, fine).B), 1e-6);

  const auto lim = melnikov_limit(1.0, q);
  const auto& diag = std::get<PhaseDiagnostics>(lim.diagnostics);
  s.at_most("limit_diagnostic_spread", std::abs(diag.limit_estimate - lim.value) + diag.limit_spread,
            1e-2);
  s.holds("limit_sign_consistent", diag.limit_sign_consistent);

  const double il = melnikov_legendre_substitution(1.0, q).value;
  s.at_most("legendre_substitution_agreement", std::abs(il - i_fine), 1e-4);

  const double m0 = melnikov_full_line({0.0, 1, 1.0, 1.0}, 1.0, q, 1e-3, 35.0);
  const double m1 = melnikov_full_line({1.3, 1, 1.0, 1.0}, 1.0, q, 1e-3, 35.0);
  s.at_most("full_line_t0_shift", std::abs(m0 - m1), 1e-6);
  s.at_most("full_line_even_only", std::abs(melnikov_full_line({0.0, 1, 1.0, 0.0}, 1.0, q, 1e-3, 35.0)),
            1e-8);

  // Zeros of m on {c0 = 0} u {c1 = 0} are transversal when I != 0.
  const bool zeros = melnikov_m(0.0, 0.8, i_fine) == 0.0 && melnikov_m(0.8, 0.0, i_fine) == 0.0 &&
                     2.0 * 0.8 * i_fine != 0.0;
  s.holds("melnikov_m_nondegenerate_zeros", zeros && i_fine != 0.0, i_fine);
  return s.take();
}

std::vector<CheckResult> splitting_suite() {
  Suite s("splitting");
  const SeparatrixCoords sc{0.0, 1, 1.0, 1.0};
  const auto report = verify_splitting(1.0, {0.0, 2e-3, 1e-3, 5e-4}, sc, 3.0);
  s.at_most("eps0_h_conserved", std::abs(report.samples[0].delta_h), 1e-10);
  s.at_most("first_order_vs_full_line_eps1e-3", report.samples[2].rel_err_full_line, 0.1);
  s.holds("error_decreases_as_eps_halves",
          report.samples[3].rel_err_full_line < report.samples[2].rel_err_full_line &&
              report.samples[2].rel_err_full_line < report.samples[1].rel_err_full_line,
          report.samples[3].rel_err_full_line);

  const auto zero_locus = verify_splitting(1.0, {1e-3, 5e-4, 2.5e-4}, {0.0, 1, 0.0, 1.0}, 3.0);
  const auto& z = zero_locus.samples;
  const double halving = std::max(std::abs(z[1].ratio / z[0].ratio), std::abs(z[2].ratio / z[1].ratio));
  s.at_most("c0_zero_ratio_vanishes_linearly", halving, 0.6);
  return s.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"poisson", "separatrix", "variational", "melnikov",
                                              "splitting"};
  return names;
}

std::vector<CheckResult> run_suite(std::string_view suite) {
  if (suite == "poisson") return poisson_suite();
  if (suite == "separatrix") return separatrix_suite();
  if (suite == "variational") return variational_suite();
  if (suite == "melnikov") return melnikov_suite();
  if (suite == "splitting") return splitting_suite();
  if (suite == "all") {
    std::vector<CheckResult> all;
    for (const auto& name : suite_names()) {
      auto part = run_suite(name);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + std::string(suite) + "'");
}

}  // namespace t4
