// t4dyn: Melnikov-integral reproduction and Lie-Poisson utilities.
//
//   t4dyn table1  [--h 0.5 0.25 ...] [--alpha 1] [--T 35]
//   t4dyn scan    [--alpha-min 0.5] [--alpha-max 10] [--steps 96] [--threads N]
//   t4dyn reduce  [--metric subriemannian|riemannian] [--a12 ..] [--k1 1 --k2 1] [--format pretty|csv]
//   t4dyn euler   [--metric ..] --p pu pv pw px py pz [--h 1e-3] [--T 100] [--stride 1]
//   t4dyn verify  poisson|separatrix|variational|melnikov|splitting|all
//
// CSV goes to stdout unless --out is given.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "t4dyn/commands.hpp"

namespace {

using t4::DiagonalMetric;

struct MetricFlags {
  std::string preset;
  std::map<std::string, double> coeffs;

  void add_to(CLI::App* cmd, const std::string& default_preset) {
    preset = default_preset;
    cmd->add_option("--metric", preset, "Coefficient preset")
        ->check(CLI::IsMember({"subriemannian", "riemannian"}))
        ->capture_default_str();
    for (const char* name : {"a12", "a13", "a14", "a23", "a24", "a34"}) {
      cmd->add_option_function<double>(std::string("--") + name,
                                       [this, name](double v) { coeffs[name] = v; },
                                       "Override one coefficient of the preset");
    }
  }

  DiagonalMetric<double> resolve() const {
    auto m = preset == "riemannian" ? DiagonalMetric<double>::riemannian()
                                    : DiagonalMetric<double>::subriemannian();
    const std::map<std::string, double*> slots{{"a12", &m.a12}, {"a13", &m.a13}, {"a14", &m.a14},
                                               {"a23", &m.a23}, {"a24", &m.a24}, {"a34", &m.a34}};
    for (const auto& [name, value] : coeffs) *slots.at(name) = value;
    return m;
  }
};

/// Runs fn against stdout or the --out file.
template <typename Fn>
int with_output(const std::string& path, Fn&& fn) {
  if (path.empty()) return fn(std::cout);
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return t4::cli::kUsage;
  }
  return fn(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Melnikov-integral computations for left-invariant geodesic flows on T4"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  std::string out_path;
  int status = t4::cli::kOk;

  t4::cli::Table1Options table1;
  auto* table1_cmd = app.add_subcommand("table1", "Forest-Ruth quadrature of I for a list of steps");
  table1_cmd->add_option("--h", table1.hs, "Step sizes")->capture_default_str();
  table1_cmd->add_option("--alpha", table1.alpha, "alpha")->capture_default_str();
  table1_cmd->add_option("--T", table1.T, "Horizon")->capture_default_str();
  table1_cmd->add_option("--out", out_path, "Output CSV path");
  table1_cmd->callback([&] {
    status = with_output(out_path, [&](std::ostream& os) { return t4::cli::cmd_table1(table1, os, std::cerr); });
  });

  t4::cli::ScanOptions scan;
  auto* scan_cmd = app.add_subcommand("scan", "Phase angle B and I over a uniform alpha grid");
  scan_cmd->add_option("--alpha-min", scan.alpha_min)->capture_default_str();
  scan_cmd->add_option("--alpha-max", scan.alpha_max)->capture_default_str();
  scan_cmd->add_option("--steps", scan.steps, "Number of grid points")->capture_default_str();
  scan_cmd->add_option("--threads", scan.threads, "Worker threads, 0 = all cores")->capture_default_str();
  scan_cmd->add_option("--out", out_path, "Output CSV path");
  scan_cmd->callback([&] {
    status = with_output(out_path, [&](std::ostream& os) { return t4::cli::cmd_scan(scan, os, std::cerr); });
  });

  t4::cli::ReduceOptions reduce;
  MetricFlags reduce_metric;
  std::string reduce_format = "pretty";
  auto* reduce_cmd = app.add_subcommand("reduce", "Orbit parameters (lambda, mu, xi, omega, nu, c, alpha)");
  reduce_metric.add_to(reduce_cmd, "subriemannian");
  reduce_cmd->add_option("--k1", reduce.k1)->capture_default_str();
  reduce_cmd->add_option("--k2", reduce.k2)->capture_default_str();
  reduce_cmd->add_option("--format", reduce_format)
      ->check(CLI::IsMember({"pretty", "csv"}))
      ->capture_default_str();
  reduce_cmd->add_option("--out", out_path, "Output path");
  reduce_cmd->callback([&] {
    reduce.metric = reduce_metric.resolve();
    reduce.format = reduce_format == "csv" ? t4::cli::Format::csv : t4::cli::Format::pretty;
    status = with_output(out_path, [&](std::ostream& os) { return t4::cli::cmd_reduce(reduce, os, std::cerr); });
  });

  t4::cli::EulerOptions euler;
  MetricFlags euler_metric;
  std::vector<double> p0;
  auto* euler_cmd = app.add_subcommand("euler", "RK4 Euler flow on t4* with Casimir and energy telemetry");
  euler_metric.add_to(euler_cmd, "riemannian");
  euler_cmd->add_option("--p", p0, "Initial momenta pu pv pw px py pz")->expected(6)->required();
  euler_cmd->add_option("--h", euler.h)->capture_default_str();
  euler_cmd->add_option("--T", euler.T)->capture_default_str();
  euler_cmd->add_option("--stride", euler.stride, "Record every n-th step")->capture_default_str();
  euler_cmd->add_option("--out", out_path, "Output CSV path");
  euler_cmd->callback([&] {
    euler.metric = euler_metric.resolve();
    for (int i = 0; i < 6; ++i) euler.p0[i] = p0[i];
    status = with_output(out_path, [&](std::ostream& os) { return t4::cli::cmd_euler(euler, os, std::cerr); });
  });

  std::string suite;
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant suites; exit 1 on any failure");
  verify_cmd->add_option("suite", suite, "poisson|separatrix|variational|melnikov|splitting|all")->required();
  verify_cmd->callback([&] {
    status = with_output(out_path, [&](std::ostream& os) { return t4::cli::cmd_verify(suite, os, std::cerr); });
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return t4::cli::kUsage;
  }
  return status;
}
