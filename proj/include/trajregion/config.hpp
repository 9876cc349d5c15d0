#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "trajregion/discovery.hpp"

namespace trajregion {

// Run configuration is a flat list of `key = value` lines. Blank lines and
// lines whose first non-blank character is '#' are ignored; whitespace
// around keys and values is trimmed. Later lines override earlier ones.
// Values spelled `auto` keep the data-derived default. See README for keys.

using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in);
KeyValues read_key_values_file(const std::string& path);

struct RunConfig {
  DiscoveryConfig discovery;
  std::size_t reward_clusters = 2;
  /// Reward values whose labels count as success; empty means automatic.
  std::vector<double> success_values;
  bool include_traces = false;
};

/// Every recognised key.
const std::vector<std::string>& config_keys();

/// Applies `kv` on top of `base`. Unknown keys and malformed values throw
/// Error(invalid_parameter).
RunConfig apply_config(RunConfig base, const KeyValues& kv);

/// Full effective configuration with defaults resolved, keyed like the file.
nlohmann::ordered_json config_snapshot(const RunConfig& cfg);

/// Maps configured success reward values to alphabet indices (nearest value).
std::vector<std::size_t> success_label_indices(const RunConfig& cfg, const RewardAlphabet& labels);

} // namespace trajregion
