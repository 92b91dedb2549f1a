#include "capent/log_base.hpp"

#include <cmath>
#include <numbers>

#include "capent/errors.hpp"

namespace capent {

double ln_of_base(LogBase base) noexcept {
  return base == LogBase::Two ? std::numbers::ln2 : 1.0;
}

double log_in(LogBase base, double x) noexcept {
  return base == LogBase::Two ? std::log2(x) : std::log(x);
}

std::string_view to_string(LogBase base) noexcept {
  return base == LogBase::Two ? "2" : "e";
}

LogBase parse_log_base(std::string_view text) {
  if (text == "2") return LogBase::Two;
  if (text == "e") return LogBase::E;
  throw ConfigurationError("log base must be '2' or 'e', got '" + std::string(text) + "'");
}

}  // namespace capent
