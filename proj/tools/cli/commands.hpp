#pragma once

#include <ostream>

#include "cli/csv.hpp"
#include "cli/run_config.hpp"

namespace capent::cli {

enum ExitCode : int { kExitOk = 0, kExitInvariant = 1, kExitConfig = 2, kExitIo = 3 };

/// Validates `cfg`, writes the command's CSV to `out` and returns kExitOk, or
/// kExitInvariant when verify finds a hard failure. Library errors propagate.
int run_command(const RunConfig& cfg, std::ostream& out);

/// Opens cfg.output_path (standard output when empty), runs the command and
/// maps errors to exit codes, reporting them on `err`.
int run(const RunConfig& cfg, std::ostream& err);

void cmd_figure1(const RunConfig& cfg, CsvWriter& csv);
void cmd_figure2(const RunConfig& cfg, CsvWriter& csv);
void cmd_figures34(const RunConfig& cfg, CsvWriter& csv);
void cmd_maximize(const RunConfig& cfg, CsvWriter& csv);
/// Returns true iff every hard check passed.
bool cmd_verify(const RunConfig& cfg, CsvWriter& csv);

}  // namespace capent::cli
