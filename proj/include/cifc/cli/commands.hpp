#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cifc/cli/config.hpp"

namespace cifc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitConfig = 2;

/// Each command writes its CSV to `out` and returns 0 or 1.
int cmd_ldc_verify(const SweepConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_ldc_outer(const SweepConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_gaussian_gap(const SweepConfig& cfg, std::ostream& out, std::ostream& log);
int cmd_gdof_curves(const SweepConfig& cfg, std::ostream& out, std::ostream& log);

/// Full front end: argument parsing, config file merge, dispatch, exit code.
/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& log);

}  // namespace cifc::cli
