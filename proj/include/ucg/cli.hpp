#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace ucg::cli {

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kBudgetExhausted = 3,
};

struct RunReport {
  std::string command;        // argv joined by spaces
  std::string inputs_digest;  // FNV-1a 64 over argv and any input files
  nlohmann::json payload;
  bool exhaustive = true;
  double seconds = 0;
  int exit_code = kSuccess;

  nlohmann::json to_json() const;
};

/// Runs one subcommand. args excludes the program name. Human-readable text
/// goes to out (or the JSON report with --json); diagnostics go to err.
RunReport run(const std::vector<std::string>& args, std::ostream& out,
              std::ostream& err);

}  // namespace ucg::cli
