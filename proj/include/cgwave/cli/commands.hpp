#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cgwave/cli/config.hpp"

namespace cgwave::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  ///< I/O or unexpected internal error
  kExitValidation = 2,
  kExitConvergence = 3,
  kExitConfig = 4,
};

/// Command-line overrides; unset members leave the config value alone.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<double> k;
  std::optional<double> s_max;
  std::optional<int> steps;
  std::optional<int> n_modes;
  std::optional<std::string> branch_file;
  std::optional<int> point;
};

/// Loads the config (or defaults) and applies the overrides. The output
/// directory is taken from --out, else CGWAVE_OUT_DIR, else the config.
RunConfig resolve_config(const Overrides& o);

int cmd_dispersion(const RunConfig& c, std::ostream& log);
int cmd_kernel_check(const RunConfig& c, std::ostream& log);
int cmd_branch(const RunConfig& c, std::ostream& log);
int cmd_validate(const RunConfig& c, const Overrides& o, std::ostream& log);
int cmd_reconstruct(const RunConfig& c, const Overrides& o, std::ostream& log);

/// Resolves the config and runs `command`, mapping every failure to an exit code.
int run_command(const std::string& command, const Overrides& o, std::ostream& log);

}  // namespace cgwave::cli
