#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cifc/gdof/gdof.hpp"

namespace cifc::cli {

/// Bad flags, config file contents or gains files. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One raw setting and where it came from, for error messages.
struct RawValue {
  std::string value;
  std::string source;
};

using RawConfig = std::map<std::string, RawValue>;

/// Parses key=value lines. Blank lines and lines starting with '#' are
/// skipped; keys are case-sensitive and '_' is read as '-'.
RawConfig load_key_values(const std::string& path);

/// Comma-separated items, each a number or start:stop[:step] (step defaults
/// to 1). Range points are snapped to a 1e-12 lattice so that e.g. 1.0 is
/// hit exactly. An empty string gives an empty list.
std::vector<double> parse_grid(const std::string& text, const std::string& field);
std::vector<int> parse_int_grid(const std::string& text, const std::string& field);

/// K x K whitespace-separated non-negative integers; K is inferred.
std::vector<int> load_gains_file(const std::string& path, std::size_t& k);

struct SweepConfig {
  std::string command;
  std::string out = "-";
  std::uint64_t seed = 0;
  std::size_t budget = 0;
  std::vector<std::size_t> k;
  std::vector<double> alpha;
  std::vector<double> snr_db;
  std::vector<int> nd;
  std::vector<int> ni;
  std::vector<gdof::Model> models;
  std::string gains;
  std::size_t samples = 0;
  int max_gain = 3;
  std::size_t trials = 1000;
  std::uint64_t verify_samples = 10000;
  bool exhaustive = false;
  bool discontinuity = false;
};

/// Fills command defaults, then validates every value. Throws ConfigError.
SweepConfig build_config(const std::string& command, const RawConfig& raw);

}  // namespace cifc::cli
