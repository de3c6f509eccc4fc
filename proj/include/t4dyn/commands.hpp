#pragma once

// Command implementations behind the t4dyn executable. Each writes its CSV or
// report to `out`, diagnostics to `err`, and returns the process exit code.

#include <ostream>
#include <string_view>
#include <vector>

#include "t4dyn/error.hpp"
#include "t4dyn/lie_poisson.hpp"

namespace t4::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kNumeric = 3 };

int exit_code_for(const Error& e);

struct Table1Options {
  std::vector<double> hs{0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  double alpha = 1.0;
  double T = 35.0;
};
int cmd_table1(const Table1Options& opt, std::ostream& out, std::ostream& err);

struct ScanOptions {
  double alpha_min = 0.5;
  double alpha_max = 10.0;
  int steps = 96;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
  double quad_h = 0.0078125;
  double quad_T = 35.0;
};
int cmd_scan(const ScanOptions& opt, std::ostream& out, std::ostream& err);

enum class Format { csv, pretty };

struct ReduceOptions {
  DiagonalMetric<double> metric = DiagonalMetric<double>::subriemannian();
  double k1 = 1.0;
  double k2 = 1.0;
  Format format = Format::pretty;
};
int cmd_reduce(const ReduceOptions& opt, std::ostream& out, std::ostream& err);

struct EulerOptions {
  DiagonalMetric<double> metric = DiagonalMetric<double>::riemannian();
  CoadjointPoint p0 = CoadjointPoint::Zero();
  double h = 1e-3;
  double T = 100.0;
  int stride = 1;
};
int cmd_euler(const EulerOptions& opt, std::ostream& out, std::ostream& err);

int cmd_verify(std::string_view suite, std::ostream& out, std::ostream& err);

}  // namespace t4::cli
