#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "m2m/model.hpp"

namespace m2m::cli {

/// Flat key = value config document; '#' starts a comment.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

/// Builds a NetworkConfig from key/value pairs over Table-II defaults.
/// `eta` and `p_o` have no paper value and must be present explicitly unless
/// `require_explicit` is false. p_t_max accepts "inf".
NetworkConfig config_from_kv(const std::map<std::string, std::string>& kv,
                             bool require_explicit = true);

/// Canonical one-line echo of a config, used in manifests and hashing.
std::string config_echo(const NetworkConfig& cfg);

uint64_t fnv1a64(std::string_view data);

/// Stable formatting for CSV payloads (round-trippable, locale-free).
std::string format_double(double v);

struct RunManifest {
  std::string command;
  std::string config;   // canonical echo
  uint64_t seed = 0;
  std::string extra;    // command-specific parameter echo
  uint64_t hash() const;
  /// Comment header block placed at the top of every output CSV.
  std::string header_block() const;
};

}  // namespace m2m::cli
