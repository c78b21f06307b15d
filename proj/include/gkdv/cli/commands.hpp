#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

namespace gkdv::cli {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitThreshold = 2, kExitBlowup = 3 };

struct Outcome {
  int exit_code = kExitOk;
  /// {version, command, config, status, checks, result}.
  nlohmann::json report;
  std::string csv;
};

const char* version();

/// Runs a command on a resolved configuration. Trace containers requested by
/// the configuration are written during the run; the report files are not.
/// Numerical blowup yields exit code 3 with the last healthy state in the report.
Outcome execute(const std::string& command, const nlohmann::json& config);

/// Writes report.json, samples.csv and, when a trace was written, its JSON
/// sidecar, each through a temporary file and rename.
void write_outputs(const Outcome& outcome, const nlohmann::json& config);

/// Command-line entry point: gkdv_lab <command> [--config file.json] [--key value ...].
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gkdv::cli
