#include "cifc/cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cifc/error.hpp"

namespace cifc::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double to_double(const std::string& s, const std::string& field) {
  double v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end || !std::isfinite(v)) {
    throw ConfigError(field + ": '" + s + "' is not a number");
  }
  return v;
}

std::uint64_t to_u64(const std::string& s, const std::string& field) {
  std::uint64_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [p, ec] = std::from_chars(s.data(), end, v);
  if (s.empty() || ec != std::errc() || p != end) {
    throw ConfigError(field + ": '" + s + "' is not a non-negative integer");
  }
  return v;
}

bool to_bool(const std::string& s, const std::string& field) {
  std::string low = s;
  std::transform(low.begin(), low.end(), low.begin(), [](unsigned char c) { return std::tolower(c); });
  if (low == "1" || low == "true" || low == "yes" || low == "on") return true;
  if (low == "0" || low == "false" || low == "no" || low == "off") return false;
  throw ConfigError(field + ": '" + s + "' is not a boolean");
}

double snap(double v) { return std::round(v * 1e12) / 1e12; }

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "out",   "seed",  "budget", "k",       "alpha",      "snr-db",     "nd",          "ni",
      "gains", "models", "samples", "max-gain", "trials", "verify-samples", "exhaustive", "discontinuity"};
  return keys;
}

}  // namespace

RawConfig load_key_values(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  RawConfig raw;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    const std::string where = path + ":" + std::to_string(n);
    if (eq == std::string::npos) throw ConfigError(where + ": expected key=value");
    std::string key = trim(t.substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    if (std::find(known_keys().begin(), known_keys().end(), key) == known_keys().end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    raw[key] = {trim(t.substr(eq + 1)), where};
  }
  return raw;
}

std::vector<double> parse_grid(const std::string& text, const std::string& field) {
  std::vector<double> out;
  if (trim(text).empty()) return out;
  for (const std::string& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(to_double(parts[0], field));
      continue;
    }
    if (parts.size() > 3) throw ConfigError(field + ": '" + item + "' is not start:stop[:step]");
    const double start = to_double(parts[0], field);
    const double stop = to_double(parts[1], field);
    const double step = parts.size() == 3 ? to_double(parts[2], field) : 1.0;
    if (!(step > 0)) throw ConfigError(field + ": step must be positive");
    if (stop < start) throw ConfigError(field + ": stop must not be below start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 10'000'000) throw ConfigError(field + ": range has too many points");
    for (std::size_t i = 0; i < count; ++i) out.push_back(snap(start + static_cast<double>(i) * step));
  }
  return out;
}

std::vector<int> parse_int_grid(const std::string& text, const std::string& field) {
  std::vector<int> out;
  for (double v : parse_grid(text, field)) {
    if (v != std::floor(v) || std::abs(v) > 1e6) throw ConfigError(field + ": values must be integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<int> load_gains_file(const std::string& path, std::size_t& k) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open gains file '" + path + "'");
  std::vector<int> v;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string tok;
    while (ls >> tok) {
      const std::string where = path + ":" + std::to_string(n);
      const std::uint64_t g = to_u64(tok, where);
      if (g > 64) throw ConfigError(where + ": gain " + tok + " exceeds 64");
      v.push_back(static_cast<int>(g));
    }
  }
  const auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (v.empty() || root * root != v.size()) {
    throw ConfigError(path + ": expected a square block of gains, got " + std::to_string(v.size()) + " entries");
  }
  k = root;
  return v;
}

SweepConfig build_config(const std::string& command, const RawConfig& given) {
  RawConfig raw = given;
  auto fallback = [&](const std::string& key, const std::string& value) {
    if (!raw.count(key)) raw[key] = {value, "default"};
  };
  if (command == "ldc-verify") {
    fallback("nd", "0:4");
    fallback("ni", "0:4");
    fallback("k", "3");
  } else if (command == "ldc-outer") {
    fallback("nd", "2");
    fallback("ni", "1");
  } else if (command == "gaussian-gap") {
    fallback("k", "3");
    fallback("snr-db", "20");
    fallback("alpha", "0:3:0.1");
  } else if (command == "gdof-curves") {
    fallback("k", "3");
    fallback("alpha", "0:3:0.05");
    fallback("models", "cms,ifc,bc");
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }

  SweepConfig c;
  c.command = command;
  auto field = [&](const std::string& key) { return key + " (" + raw.at(key).source + ")"; };
  auto get = [&](const std::string& key) -> const std::string* { return raw.count(key) ? &raw.at(key).value : nullptr; };

  if (const auto* v = get("out")) {
    if (v->empty()) throw ConfigError(field("out") + ": output path must not be empty");
    c.out = *v;
  }
  if (const auto* v = get("seed")) c.seed = to_u64(*v, field("seed"));
  if (const auto* v = get("budget")) c.budget = to_u64(*v, field("budget"));
  if (const auto* v = get("k")) {
    for (int x : parse_int_grid(*v, field("k"))) {
      if (x < 2 || x > 64) throw ConfigError(field("k") + ": user count must be in [2, 64]");
      c.k.push_back(static_cast<std::size_t>(x));
    }
  }
  if (const auto* v = get("alpha")) {
    c.alpha = parse_grid(*v, field("alpha"));
    for (double a : c.alpha) {
      if (a < 0) throw ConfigError(field("alpha") + ": alpha must be non-negative");
    }
  }
  if (const auto* v = get("snr-db")) c.snr_db = parse_grid(*v, field("snr-db"));
  for (const char* key : {"nd", "ni"}) {
    if (const auto* v = get(key)) {
      auto vals = parse_int_grid(*v, field(key));
      for (int x : vals) {
        if (x < 0 || x > 64) throw ConfigError(field(key) + ": gains must be in [0, 64]");
      }
      (std::string(key) == "nd" ? c.nd : c.ni) = std::move(vals);
    }
  }
  if (const auto* v = get("models")) {
    if (!trim(*v).empty()) {
      for (const auto& m : split(*v, ',')) {
        try {
          c.models.push_back(gdof::parse_model(m));
        } catch (const cifc::InvalidArgument& e) {
          throw ConfigError(field("models") + ": " + e.what());
        }
      }
    }
  }
  if (const auto* v = get("gains")) c.gains = *v;
  if (const auto* v = get("samples")) c.samples = to_u64(*v, field("samples"));
  if (const auto* v = get("max-gain")) {
    const auto g = to_u64(*v, field("max-gain"));
    if (g > 64) throw ConfigError(field("max-gain") + ": must be at most 64");
    c.max_gain = static_cast<int>(g);
  }
  if (const auto* v = get("trials")) c.trials = to_u64(*v, field("trials"));
  if (const auto* v = get("verify-samples")) c.verify_samples = to_u64(*v, field("verify-samples"));
  if (const auto* v = get("exhaustive")) c.exhaustive = to_bool(*v, field("exhaustive"));
  if (const auto* v = get("discontinuity")) c.discontinuity = to_bool(*v, field("discontinuity"));

  if (command == "gaussian-gap") {
    for (std::size_t k : c.k) {
      if (k < 3) throw ConfigError(field("k") + ": gaussian-gap needs K >= 3");
    }
  }
  if (command == "gdof-curves") {
    for (std::size_t i = 1; i < c.alpha.size(); ++i) {
      if (!(c.alpha[i] > c.alpha[i - 1])) throw ConfigError(field("alpha") + ": grid must be strictly increasing");
    }
  }
  return c;
}

}  // namespace cifc::cli
