#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cyberops/env/types.hpp"

namespace cyberops::env {

struct HostSpec {
  std::string label;
  SubnetKind subnet = SubnetKind::User;
  double value = 0.0;
  bool foot = false;  // red team's initial foothold

  bool operator==(const HostSpec&) const = default;
};

// File-facing description of a game scenario. Serializes to JSON and
// round-trips losslessly (host order and adjacency order are preserved).
struct ScenarioConfig {
  std::string name = "default";
  std::uint64_t seed = 0;
  std::vector<HostSpec> hosts;
  std::vector<std::pair<std::string, std::string>> adjacency;

  bool operator==(const ScenarioConfig&) const = default;
};

// Three subnets (5 user / 4 enterprise / 4 operational), fully meshed inside
// each subnet, bridged U4<->E* and E3<->O*, foothold on U0.
ScenarioConfig default_scenario_config();

ScenarioConfig parse_scenario(const std::string& json_text);
std::string serialize_scenario(const ScenarioConfig& config);
ScenarioConfig load_scenario(const std::string& path);
void save_scenario(const ScenarioConfig& config, const std::string& path);

// Compiled, index-based form used by the simulator and by policies.
struct Scenario {
  ScenarioConfig config;
  std::vector<std::string> labels;  // index -> label, in config order
  std::vector<SubnetKind> subnets;
  std::vector<double> values;
  std::vector<std::vector<int>> neighbors;  // each list sorted ascending
  int foot = 0;
  std::uint64_t fingerprint = 0;  // structural hash; guards policy reuse

  int host_count() const { return static_cast<int>(labels.size()); }
  int index_of(std::string_view label) const;  // case-insensitive, -1 if absent
  bool adjacent(int a, int b) const;
  std::string action_name(const Action& action) const;  // "Exploit(U1)", "Monitor"
};

// Validates and compiles a config. Throws ConfigError on: fewer than two
// hosts, duplicate labels, not exactly one foothold, adjacency naming unknown
// hosts or self-loops, or a foothold with no links.
Scenario compile_scenario(const ScenarioConfig& config);

// Hash of the structural content (hosts, values, links, foothold); the
// scenario name and seed do not participate.
std::uint64_t scenario_fingerprint(const ScenarioConfig& config);
std::string fingerprint_hex(std::uint64_t fp);

}  // namespace cyberops::env
