#include "cli/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <set>

#include <nlohmann/json.hpp>

#include "capent/errors.hpp"

namespace capent::cli {

namespace {

using nlohmann::json;

const std::set<std::string>& known_tolerances() {
  static const std::set<std::string> names{"rate_margin", "qsl_margin", "tightness", "c",
                                           "mu_min"};
  return names;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& text, std::string_view what) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigurationError("cannot parse " + std::string(what) + " '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text, std::string_view what) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigurationError("cannot parse " + std::string(what) + " '" + text + "'");
  }
  return v;
}

std::vector<std::string> grids_used(Command c) {
  switch (c) {
    case Command::Figure1:
      return {"p", "t"};
    case Command::Figure2:
      return {"T"};
    case Command::Figures34:
      return {"lambda"};
    case Command::Maximize:
    case Command::Verify:
      return {};
  }
  return {};
}

template <typename T>
void take(const json& doc, const char* key, T& out) {
  if (doc.contains(key)) out = doc.at(key).get<T>();
}

}  // namespace

std::string_view to_string(Command c) noexcept {
  switch (c) {
    case Command::Figure1:
      return "figure1";
    case Command::Figure2:
      return "figure2";
    case Command::Figures34:
      return "figures34";
    case Command::Maximize:
      return "maximize";
    case Command::Verify:
      return "verify";
  }
  return "unknown";
}

Command parse_command(std::string_view name) {
  for (Command c : {Command::Figure1, Command::Figure2, Command::Figures34, Command::Maximize,
                    Command::Verify}) {
    if (name == to_string(c)) return c;
  }
  throw ConfigurationError("unknown command '" + std::string(name) + "'");
}

std::vector<double> GridSpec::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    v[static_cast<std::size_t>(i)] =
        count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  }
  if (count > 1) v.back() = hi;
  return v;
}

void parse_grid_specs(std::string_view text, std::map<std::string, GridSpec>& grids) {
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigurationError("grid spec '" + item + "' lacks '='");
    const std::string name = trim(std::string_view(item).substr(0, eq));
    const std::vector<std::string> range = split(std::string_view(item).substr(eq + 1), ':');
    if (name.empty() || range.size() != 3) {
      throw ConfigurationError("grid spec '" + item + "' must read name=lo:hi:count");
    }
    grids[name] = GridSpec{parse_double(range[0], "grid bound"), parse_double(range[1], "grid bound"),
                           parse_int(range[2], "grid count")};
  }
}

void parse_tolerances(std::string_view text, std::map<std::string, double>& tolerances) {
  for (const std::string& item : split(text, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigurationError("tolerance '" + item + "' lacks '='");
    tolerances[trim(std::string_view(item).substr(0, eq))] =
        parse_double(trim(std::string_view(item).substr(eq + 1)), "tolerance");
  }
}

LogBase RunConfig::resolved_base() const {
  if (log_base) return *log_base;
  return command == Command::Figure1 || command == Command::Figure2 ? LogBase::Two : LogBase::E;
}

GridSpec RunConfig::grid(const std::string& name) const {
  const std::vector<std::string> used = grids_used(command);
  if (std::find(used.begin(), used.end(), name) == used.end()) {
    throw ConfigurationError("command " + std::string(to_string(command)) + " has no grid '" +
                             name + "'");
  }
  if (const auto it = grids.find(name); it != grids.end()) return it->second;
  if (name == "p") return {0.0, 1.0, 101};
  if (name == "t") return {0.0, std::numbers::pi, 101};
  if (name == "T") return {0.0, 0.45, 46};
  return {0.0, 1.0, 101};
}

double RunConfig::tolerance(const std::string& name, double fallback) const {
  const auto it = tolerances.find(name);
  return it == tolerances.end() ? fallback : it->second;
}

void RunConfig::validate() const {
  const std::vector<std::string> used = grids_used(command);
  for (const auto& [name, spec] : grids) {
    if (std::find(used.begin(), used.end(), name) == used.end()) {
      throw ConfigurationError("command " + std::string(to_string(command)) + " has no grid '" +
                               name + "'");
    }
    if (spec.count < 1 || !(spec.lo <= spec.hi) || !std::isfinite(spec.lo) ||
        !std::isfinite(spec.hi)) {
      throw ConfigurationError("grid '" + name + "' needs lo <= hi and count >= 1");
    }
  }
  for (const auto& [name, value] : tolerances) {
    if (!known_tolerances().contains(name)) {
      throw ConfigurationError("unknown tolerance '" + name + "'");
    }
    if (!(value >= 0.0) || !std::isfinite(value)) {
      throw ConfigurationError("tolerance '" + name + "' must be finite and >= 0");
    }
  }
  if (const auto it = tolerances.find("c"); it != tolerances.end() && it->second > 1.0) {
    throw ConfigurationError("c must lie in [0, 1]");
  }
  switch (command) {
    case Command::Figure1:
      if (!std::isfinite(theta)) throw ConfigurationError("theta must be finite");
      break;
    case Command::Figure2:
      if (thetas.empty()) throw ConfigurationError("figure2 needs at least one theta");
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigurationError("p must lie in [0, 1]");
      if (samples < 2) throw ConfigurationError("samples must be >= 2");
      if (grid("T").lo < 0.0) throw ConfigurationError("T grid must be non-negative");
      break;
    case Command::Figures34:
      if (family != 1 && family != 2) throw ConfigurationError("family must be 1 or 2");
      if (method != "analytic" && method != "numeric" && method != "both") {
        throw ConfigurationError("method must be analytic, numeric or both");
      }
      if (grid("lambda").lo < 0.0 || grid("lambda").hi > 1.0) {
        throw ConfigurationError("lambda grid must lie in [0, 1]");
      }
      break;
    case Command::Maximize:
      if (target != "rate-factor" && target != "ancilla-factor" && target != "beta" &&
          target != "h-max") {
        throw ConfigurationError("unknown maximize target '" + target + "'");
      }
      if (mu.size() != 3) throw ConfigurationError("mu needs three values");
      break;
    case Command::Verify:
      if (suite != "bounds" && suite != "properties" && suite != "all") {
        throw ConfigurationError("suite must be bounds, properties or all");
      }
      if (n_samples < 1) throw ConfigurationError("n-samples must be >= 1");
      break;
  }
}

std::string to_json(const RunConfig& cfg) {
  json doc;
  doc["command"] = std::string(to_string(cfg.command));
  if (cfg.log_base) doc["log_base"] = std::string(capent::to_string(*cfg.log_base));
  doc["seed"] = cfg.seed;
  doc["output"] = cfg.output_path;
  json grids = json::object();
  for (const auto& [name, g] : cfg.grids) grids[name] = {{"lo", g.lo}, {"hi", g.hi}, {"count", g.count}};
  doc["grids"] = grids;
  doc["tolerances"] = cfg.tolerances;
  doc["theta"] = cfg.theta;
  doc["thetas"] = cfg.thetas;
  doc["p"] = cfg.p;
  doc["samples"] = cfg.samples;
  doc["family"] = cfg.family;
  doc["method"] = cfg.method;
  doc["target"] = cfg.target;
  doc["mu"] = cfg.mu;
  doc["suite"] = cfg.suite;
  doc["n_samples"] = cfg.n_samples;
  return doc.dump(2);
}

RunConfig apply_json(const RunConfig& base, std::string_view text) {
  static const std::set<std::string> keys{
      "command", "log_base", "seed",   "output", "grids",  "tolerances", "theta",    "thetas",
      "p",       "samples",  "family", "method", "target", "mu",         "suite",    "n_samples"};
  RunConfig cfg = base;
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw ConfigurationError("config document must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      if (!keys.contains(key)) throw ConfigurationError("unknown config key '" + key + "'");
    }
    if (doc.contains("command")) cfg.command = parse_command(doc.at("command").get<std::string>());
    if (doc.contains("log_base")) cfg.log_base = parse_log_base(doc.at("log_base").get<std::string>());
    take(doc, "seed", cfg.seed);
    take(doc, "output", cfg.output_path);
    if (doc.contains("grids")) {
      for (const auto& [name, g] : doc.at("grids").items()) {
        cfg.grids[name] = GridSpec{g.at("lo").get<double>(), g.at("hi").get<double>(),
                                   g.at("count").get<int>()};
      }
    }
    if (doc.contains("tolerances")) {
      for (const auto& [name, v] : doc.at("tolerances").items()) cfg.tolerances[name] = v.get<double>();
    }
    take(doc, "theta", cfg.theta);
    take(doc, "thetas", cfg.thetas);
    take(doc, "p", cfg.p);
    take(doc, "samples", cfg.samples);
    take(doc, "family", cfg.family);
    take(doc, "method", cfg.method);
    take(doc, "target", cfg.target);
    take(doc, "mu", cfg.mu);
    take(doc, "suite", cfg.suite);
    take(doc, "n_samples", cfg.n_samples);
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("malformed config document: ") + e.what());
  }
  return cfg;
}

}  // namespace capent::cli
