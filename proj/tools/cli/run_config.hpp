#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "capent/log_base.hpp"

namespace capent::cli {

enum class Command { Figure1, Figure2, Figures34, Maximize, Verify };

std::string_view to_string(Command c) noexcept;
/// Throws ConfigurationError for unknown names.
Command parse_command(std::string_view name);

/// count equally spaced values on [lo, hi], endpoints included.
struct GridSpec {
  double lo = 0.0;
  double hi = 1.0;
  int count = 2;

  std::vector<double> values() const;
  bool operator==(const GridSpec&) const = default;
};

/// Parses "name=lo:hi:count[,name=lo:hi:count...]" into `grids`, replacing
/// entries with the same name.
void parse_grid_specs(std::string_view text, std::map<std::string, GridSpec>& grids);

/// Parses "name=value[,name=value...]".
void parse_tolerances(std::string_view text, std::map<std::string, double>& tolerances);

struct RunConfig {
  Command command = Command::Figure1;
  std::optional<LogBase> log_base;  // unset: the command's natural default
  std::uint64_t seed = 1;
  std::string output_path;  // empty: standard output
  std::map<std::string, GridSpec> grids;
  std::map<std::string, double> tolerances;

  double theta = 1.0;                       // figure1
  std::vector<double> thetas{0.5, 1.0};     // figure2
  double p = 1.0;                           // figure2
  int samples = 10'000;                     // figure2 quadrature nodes
  int family = 1;                           // figures34
  std::string method = "analytic";          // figures34: analytic | numeric | both
  std::string target = "rate-factor";       // maximize
  std::vector<double> mu{1.0, 0.5, 0.2};    // maximize h-max
  std::string suite = "all";                // verify
  int n_samples = 1000;                     // verify

  bool operator==(const RunConfig&) const = default;

  /// Base 2 for figure1/figure2, natural log otherwise, unless set.
  LogBase resolved_base() const;
  /// Named grid or the command default. Throws ConfigurationError for grids
  /// the command does not use.
  GridSpec grid(const std::string& name) const;
  /// Named tolerance override or `fallback`.
  double tolerance(const std::string& name, double fallback) const;
  /// Throws ConfigurationError on out-of-range parameters or names.
  void validate() const;
};

/// Single JSON document holding every RunConfig field.
std::string to_json(const RunConfig& cfg);

/// Applies the keys present in `json` on top of `base`. Throws
/// ConfigurationError on malformed documents or unknown keys.
RunConfig apply_json(const RunConfig& base, std::string_view json);

}  // namespace capent::cli
