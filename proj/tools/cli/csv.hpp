#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace capent::cli {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);

using Cell = std::variant<double, long long, std::string>;

/// CSV with '#' metadata lines ahead of a single header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  /// Only valid before the header.
  void metadata(std::string_view key, std::string_view value);
  void header(std::initializer_list<std::string_view> columns);
  /// Throws std::logic_error when the cell count differs from the header.
  void row(const std::vector<Cell>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_ = 0;
  bool header_written_ = false;
};

}  // namespace capent::cli
