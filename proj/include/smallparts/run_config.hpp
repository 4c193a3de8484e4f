#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "smallparts/verify.hpp"

namespace smallparts {

/// Settings for a CLI run, stored as plain "key = value" lines:
///
///   suite = paper-all
///   out = report.json
///   format = json
///   jobs = 2
///   oracle_ceiling = 60
///   range = 0:500
///   ell = 5
///   m = 1
///   cache_dir = /tmp/cache
///   prec.mstar = 2000
///
/// Blank lines and lines starting with '#' are ignored.
struct RunConfig {
  std::string suite = "paper-all";
  std::optional<std::string> out;
  std::string format = "json";
  int jobs = 1;
  std::int64_t oracle_ceiling = 60;
  std::optional<IndexRange> range;
  std::optional<std::int64_t> ell;
  std::optional<int> m;
  std::optional<std::string> cache_dir;
  /// Default q-precision per series name.
  std::map<std::string, std::int64_t> precision;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

std::string to_config_text(const RunConfig& config);
/// Throws ParseError naming the offending line.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
void save_config(const RunConfig& config, const std::filesystem::path& path);

/// "lo:hi" or a bare "hi" (meaning 0:hi).
IndexRange parse_range(const std::string& text);

}  // namespace smallparts
