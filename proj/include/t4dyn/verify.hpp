#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace t4 {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  /// Observed quantity compared against the tolerance.
  double value = 0.0;
  double tolerance = 0.0;
};

/// poisson, separatrix, variational, melnikov, splitting
const std::vector<std::string>& suite_names();

/// Runs one invariant suite, or every suite for "all". Throws InvalidArgument
/// for an unknown name.
std::vector<CheckResult> run_suite(std::string_view suite);

}  // namespace t4
