#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string_view>

#include "f2k/cli/reports.hpp"

namespace f2k::cli {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // any error without a dedicated code
  kExitConfigInvalid = 2,
  kExitProviderUnavailable = 3,
  kExitBudgetExhausted = 4,
  kExitExecutorFailure = 5,
  kExitMissingData = 6,
};

/// Maps the in-flight exception to an exit code and writes a one-line message
/// to `err`. Call only from a catch block.
int report_current_exception(std::ostream& err);

/// Loads the config, wires provider, gateway, agents and backend, and runs the
/// pipeline. Progress lines go to `out`.
int cmd_run(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// Renders a report; prints it to `out` when no output file was requested.
int cmd_report(const ReportRequest& request, std::ostream& out, std::ostream& err);

}  // namespace f2k::cli
