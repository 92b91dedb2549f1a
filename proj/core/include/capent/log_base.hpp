#pragma once

#include <string>
#include <string_view>

namespace capent {

/// Logarithm base used for entropies and capacities. Capacities are reported
/// in squared units of the chosen base.
enum class LogBase { Two, E };

/// ln(base): the factor converting natural-log quantities into this base.
double ln_of_base(LogBase base) noexcept;

double log_in(LogBase base, double x) noexcept;

std::string_view to_string(LogBase base) noexcept;

/// Accepts "2" or "e". Throws ConfigurationError otherwise.
LogBase parse_log_base(std::string_view text);

}  // namespace capent
