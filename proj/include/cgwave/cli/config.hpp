#pragma once

// Run configuration: an INI file with the sections documented in README.md.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cgwave/params.hpp"

namespace cgwave::cli {

/// Invalid configuration. `line` is 1-based, or 0 when no line applies.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct RunConfig {
  PhysicalParams physics;
  int n_modes = 32;
  int m_y = 64;
  std::optional<double> s_max;  ///< unset means 0.05 h
  int steps = 10;
  double tol = 1e-11;
  int max_iter = 25;
  double k_min = 1.0;
  double k_max = 100.0;
  int k_count = 100;
  int kernel_n_max = 1000;
  double kernel_tol = 1e-10;
  std::string out_dir = "cgwave_out";

  double effective_s_max() const { return s_max ? *s_max : 0.05 * physics.h; }
};

/// Parses INI text. Unknown sections or keys, malformed numbers and values
/// violating the invariants raise ConfigError naming the key and line.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");

RunConfig load_config(const std::string& path);

/// Throws ConfigError unless every field is in range.
void validate_config(const RunConfig& c);

}  // namespace cgwave::cli
