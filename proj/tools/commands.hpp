#pragma once

#include <stdexcept>
#include <string>

#include "config.hpp"

namespace bpi_cli {

enum ExitCode { exit_ok = 0, exit_validation = 1, exit_numerical = 2, exit_report_failure = 3 };

/// Failure carrying the process exit code.
class CommandError : public std::runtime_error {
 public:
  CommandError(int code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct CommandOptions {
  std::string out;     // overrides outputs.path
  std::string format;  // overrides outputs.format
  std::string input;   // fit: counts or curve CSV
};

int exit_code_for(bpi_status status);

/// Runs one subcommand; returns the exit code.
int run_command(const std::string& name, const RunConfig& cfg, const CommandOptions& options);

}  // namespace bpi_cli
