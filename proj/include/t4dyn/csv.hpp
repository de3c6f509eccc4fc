#pragma once

#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace t4 {

/// Shortest round-trip decimal form, '.' separator, independent of the global locale.
std::string format_double(double v);

/// Comma-separated rows with LF line endings. Empty optionals become empty cells.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> columns);
  void row(const std::vector<std::optional<double>>& cells);

 private:
  std::ostream& out_;
};

}  // namespace t4
