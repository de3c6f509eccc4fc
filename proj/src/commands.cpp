#include "t4dyn/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <thread>
#include <utility>

#include "t4dyn/csv.hpp"
#include "t4dyn/integrators.hpp"
#include "t4dyn/melnikov.hpp"
#include "t4dyn/verify.hpp"

namespace t4::cli {

int exit_code_for(const Error& e) { return e.is_numeric() ? kNumeric : kUsage; }

namespace {

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace

int cmd_table1(const Table1Options& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opt.hs.empty()) throw Error(ErrorCode::InvalidArgument, "at least one step size is required");
    for (double h : opt.hs) {
      try {
        StepperConfig{h, opt.T, Method::forest_ruth, 1}.steps();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::GridMismatch) throw;
        throw Error(ErrorCode::GridMismatch, "h=" + format_double(h) + " does not divide T=" +
                                                 format_double(opt.T) + "; N = " +
                                                 format_double(opt.T) + "/h must be an integer");
      }
    }
    const auto q = PotentialProfile::sech2();
    CsvWriter csv(out);
    csv.header({"h", "I", "H0_min", "H0_max", "H1_min", "H1_max", "H0_drift", "H1_drift"});
    for (double h : opt.hs) {
      const auto r = melnikov_quadrature(opt.alpha, q, h, opt.T);
      const auto& d = std::get<QuadratureDiagnostics>(r.diagnostics);
      csv.row({h, r.value, d.h0_min, d.h0_max, d.h1_min, d.h1_max, d.h0_drift(), d.h1_drift()});
    }
    return int{kOk};
  });
}

int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(opt.alpha_min > 0.0) || !(opt.alpha_min < opt.alpha_max)) {
      throw Error(ErrorCode::InvalidArgument, "scan requires 0 < alpha_min < alpha_max");
    }
    if (opt.steps < 2) throw Error(ErrorCode::InvalidArgument, "scan requires steps >= 2");

    struct Row {
      double alpha = 0.0;
      double B = 0.0;
      std::optional<double> i_phase;
      double i_quad = 0.0;
      std::optional<Error> failure;
    };
    std::vector<Row> rows(opt.steps);
    const auto q = PotentialProfile::sech2();
    const double da = (opt.alpha_max - opt.alpha_min) / (opt.steps - 1);

    std::atomic<int> next{0};
    const auto worker = [&] {
      for (int i = next++; i < opt.steps; i = next++) {
        Row& row = rows[i];
        row.alpha = i == opt.steps - 1 ? opt.alpha_max : opt.alpha_min + i * da;
        try {
          try {
            const auto lim = melnikov_limit(row.alpha, q);
            row.B = std::get<PhaseDiagnostics>(lim.diagnostics).B;
            row.i_phase = lim.value;
          } catch (const Error& e) {
            if (e.code() != ErrorCode::PhaseNearSingular) throw;
            row.B = phase_angle(row.alpha, q).B;
          }
          row.i_quad = melnikov_quadrature(row.alpha, q, opt.quad_h, opt.quad_T).value;
        } catch (const Error& e) {
          row.failure = e;
        }
      }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned n_threads =
        std::min<unsigned>(opt.threads == 0 ? hw : opt.threads, static_cast<unsigned>(opt.steps));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    for (const auto& row : rows) {
      if (row.failure) throw *row.failure;
    }
    CsvWriter csv(out);
    csv.header({"alpha", "B", "I_phase", "I_quad", "delta"});
    for (const auto& row : rows) {
      std::optional<double> delta;
      if (row.i_phase) delta = std::abs(*row.i_phase - row.i_quad);
      csv.row({row.alpha, row.B, row.i_phase, row.i_quad, delta});
    }
    return int{kOk};
  });
}

int cmd_reduce(const ReduceOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto r = reduce_params(opt.metric, OrbitId<double>{opt.k1, opt.k2});
    if (opt.format == Format::csv) {
      CsvWriter csv(out);
      csv.header({"lambda", "mu", "xi", "omega", "nu", "c", "alpha", "xi_nu_ratio"});
      csv.row({r.lambda, r.mu, r.xi, r.omega, r.nu, r.c, r.alpha, r.xi_normalization});
    } else {
      const std::pair<const char*, double> fields[] = {
          {"lambda", r.lambda}, {"mu", r.mu}, {"xi", r.xi},       {"omega", r.omega},
          {"nu", r.nu},         {"c", r.c},   {"alpha", r.alpha}, {"xi_nu_ratio", r.xi_normalization}};
      for (const auto& [name, value] : fields) out << name << " = " << format_double(value) << '\n';
    }
    return int{kOk};
  });
}

int cmd_euler(const EulerOptions& opt, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (double v : {opt.metric.a12, opt.metric.a13, opt.metric.a14, opt.metric.a23,
                     opt.metric.a24, opt.metric.a34}) {
      if (!(v >= 0.0)) throw Error(ErrorCode::InvalidArgument, "metric coefficients must be nonnegative");
    }
    if (opt.stride < 1) throw Error(ErrorCode::InvalidArgument, "stride must be positive");
    const long n = StepperConfig{opt.h, opt.T, Method::rk4, opt.stride}.steps();
    const auto& metric = opt.metric;
    const auto field = [&metric](double, const CoadjointPoint& p) { return euler_field(metric, p); };

    CsvWriter csv(out);
    csv.header({"t", "pu", "pv", "pw", "px", "py", "pz", "K1", "K2", "H"});
    const auto emit = [&](double t, const CoadjointPoint& p) {
      const auto k = casimirs(p);
      csv.row({t, p[0], p[1], p[2], p[3], p[4], p[5], k.k1, k.k2, metric.hamiltonian(p)});
    };

    CoadjointPoint p = opt.p0;
    const auto k0 = casimirs(p);
    const double h0 = metric.hamiltonian(p);
    double dk1 = 0.0, dk2 = 0.0, dh = 0.0;
    emit(0.0, p);
    for (long i = 1; i <= n; ++i) {
      p = rk4_step(field, (i - 1) * opt.h, p, opt.h);
      if (!p.allFinite()) {
        throw Error(ErrorCode::NonfiniteState, "Euler flow overflowed at step " + std::to_string(i));
      }
      const auto k = casimirs(p);
      dk1 = std::max(dk1, std::abs(k.k1 - k0.k1));
      dk2 = std::max(dk2, std::abs(k.k2 - k0.k2));
      dh = std::max(dh, std::abs(metric.hamiltonian(p) - h0));
      if (i % opt.stride == 0 || i == n) emit(i * opt.h, p);
    }
    out << "# max_abs_dK1=" << format_double(dk1) << ",max_abs_dK2=" << format_double(dk2)
        << ",max_abs_dH=" << format_double(dh) << '\n';
    return int{kOk};
  });
}

int cmd_verify(std::string_view suite, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto results = run_suite(suite);
    int failed = 0;
    out << "suite,check,status,value,tolerance\n";
    for (const auto& r : results) {
      out << r.suite << ',' << r.name << ',' << (r.passed ? "PASS" : "FAIL") << ','
          << format_double(r.value) << ',' << format_double(r.tolerance) << '\n';
      failed += r.passed ? 0 : 1;
    }
    out << "# passed=" << results.size() - failed << " failed=" << failed << '\n';
    return failed == 0 ? int{kOk} : int{kVerifyFailed};
  });
}

}  // namespace t4::cli
