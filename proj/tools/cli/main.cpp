#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI/CLI.hpp>

#include "capent/errors.hpp"
#include "cli/commands.hpp"
#include "cli/run_config.hpp"

namespace {

using capent::cli::RunConfig;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw capent::IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacity of entanglement: figures, maximizations and invariant checks"};

  std::string command = "figure1";
  std::string log_base;
  std::string grid_text;
  std::string tol_text;
  std::string config_path;
  std::string dump_path;
  double t_max = -1.0;
  RunConfig cfg;

  app.add_option("--command", command, "figure1 | figure2 | figures34 | maximize | verify")
      ->required();
  app.add_option("--log-base", log_base, "2 or e (default: 2 for figure1/figure2, e otherwise)");
  app.add_option("--seed", cfg.seed, "Seed for every random draw");
  app.add_option("--out", cfg.output_path, "Output CSV path (default: standard output)");
  app.add_option("--grid", grid_text, "Grids as name=lo:hi:count[,...]");
  app.add_option("--tol", tol_text, "Tolerances as name=value[,...]");
  app.add_option("--config", config_path, "JSON run configuration; its keys override flags");
  app.add_option("--dump-config", dump_path, "Write the resolved configuration as JSON and exit");
  app.add_option("--theta", cfg.theta, "figure1 coupling");
  app.add_option("--thetas", cfg.thetas, "figure2 couplings")->delimiter(',');
  app.add_option("--p", cfg.p, "figure2 Schmidt weight");
  app.add_option("--t-max", t_max, "figure2 largest total time (keeps the default spacing)");
  app.add_option("--samples", cfg.samples, "figure2 quadrature nodes");
  app.add_option("--family", cfg.family, "figures34 state family (1 or 2)");
  app.add_option("--method", cfg.method, "figures34: analytic | numeric | both");
  app.add_option("--target", cfg.target, "maximize: rate-factor | ancilla-factor | beta | h-max");
  app.add_option("--mu", cfg.mu, "maximize h-max couplings mu1,mu2,mu3")->delimiter(',');
  app.add_option("--suite", cfg.suite, "verify: bounds | properties | all");
  app.add_option("--n-samples", cfg.n_samples, "verify random draws per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : capent::cli::kExitConfig;
  }

  try {
    cfg.command = capent::cli::parse_command(command);
    if (!log_base.empty()) cfg.log_base = capent::parse_log_base(log_base);
    capent::cli::parse_grid_specs(grid_text, cfg.grids);
    capent::cli::parse_tolerances(tol_text, cfg.tolerances);
    if (t_max >= 0.0 && !cfg.grids.contains("T")) {
      cfg.grids["T"] = capent::cli::GridSpec{0.0, t_max, static_cast<int>(t_max / 0.01 + 0.5) + 1};
    }
    if (!config_path.empty()) cfg = capent::cli::apply_json(cfg, read_file(config_path));
    if (!dump_path.empty()) {
      cfg.validate();
      std::ofstream out(dump_path, std::ios::binary | std::ios::trunc);
      out << capent::cli::to_json(cfg) << '\n';
      if (!out) throw capent::IoError("cannot write config file '" + dump_path + "'");
      return capent::cli::kExitOk;
    }
  } catch (const capent::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return capent::cli::kExitIo;
  } catch (const capent::Error& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return capent::cli::kExitConfig;
  }
  return capent::cli::run(cfg, std::cerr);
}
