#include "cli/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace capent::cli {

namespace {

std::string escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("double formatting failed");
  return std::string(buf.data(), ptr);
}

void CsvWriter::metadata(std::string_view key, std::string_view value) {
  if (header_written_) throw std::logic_error("metadata after the CSV header");
  out_ << "# " << key << ": " << value << '\n';
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  if (header_written_) throw std::logic_error("CSV header written twice");
  bool first = true;
  for (std::string_view c : columns) {
    out_ << (first ? "" : ",") << c;
    first = false;
  }
  out_ << '\n';
  columns_ = columns.size();
  header_written_ = true;
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (!header_written_ || cells.size() != columns_) {
    throw std::logic_error("CSV row does not match the header");
  }
  bool first = true;
  for (const Cell& cell : cells) {
    if (!first) out_ << ',';
    first = false;
    if (const auto* d = std::get_if<double>(&cell)) {
      out_ << format_double(*d);
    } else if (const auto* i = std::get_if<long long>(&cell)) {
      out_ << *i;
    } else {
      out_ << escape(std::get<std::string>(cell));
    }
  }
  out_ << '\n';
}

}  // namespace capent::cli
