#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "bardina/config.hpp"

namespace bardina {

inline constexpr const char* kVersion = "0.3.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitBlowUp = 3,
  kExitNoConvergence = 4,
  kExitReportFailure = 5,
};

const std::vector<std::string>& subcommands();

/// Runs one subcommand and writes its artifacts into out_dir (created if
/// missing): data files, report.json where checks apply, effective_config.ini
/// and metadata.json. Progress and errors go to `log`. Returns the exit code.
int run(const std::string& subcommand, const RunConfig& cfg, const std::filesystem::path& out_dir, std::ostream& log);

/// Loads the config file, then run(). Config errors map to kExitConfig.
int run_file(const std::string& subcommand, const std::filesystem::path& config, const std::filesystem::path& out_dir,
             std::ostream& log);

}  // namespace bardina
