#include "cyberops/env/scenario.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>
#include <unordered_map>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/text.hpp"

namespace cyberops::env {

using nlohmann::json;

ScenarioConfig default_scenario_config() {
  ScenarioConfig cfg;
  cfg.name = "default";
  cfg.seed = 0;

  auto add_subnet = [&cfg](const char* prefix, int count, SubnetKind kind) {
    for (int i = 0; i < count; ++i) {
      HostSpec h;
      h.label = prefix + std::to_string(i);
      h.subnet = kind;
      h.value = subnet_value(kind);
      cfg.hosts.push_back(std::move(h));
    }
  };
  add_subnet("U", 5, SubnetKind::User);
  add_subnet("E", 4, SubnetKind::Enterprise);
  add_subnet("O", 4, SubnetKind::Operational);
  cfg.hosts[0].foot = true;

  auto mesh = [&cfg](const char* prefix, int count) {
    for (int a = 0; a < count; ++a)
      for (int b = a + 1; b < count; ++b)
        cfg.adjacency.emplace_back(prefix + std::to_string(a), prefix + std::to_string(b));
  };
  mesh("U", 5);
  mesh("E", 4);
  mesh("O", 4);
  for (int i = 0; i < 4; ++i) cfg.adjacency.emplace_back("U4", "E" + std::to_string(i));
  for (int i = 0; i < 4; ++i) cfg.adjacency.emplace_back("E3", "O" + std::to_string(i));
  return cfg;
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    ScenarioConfig cfg;
    cfg.name = j.value("name", std::string("unnamed"));
    cfg.seed = j.value("seed", std::uint64_t{0});
    for (const auto& jh : j.at("hosts")) {
      HostSpec h;
      h.label = jh.at("label").get<std::string>();
      const auto kind = subnet_from_string(jh.at("subnet").get<std::string>());
      if (!kind) throw ConfigError("unknown subnet kind for host " + h.label);
      h.subnet = *kind;
      h.value = jh.contains("value") ? jh.at("value").get<double>() : subnet_value(h.subnet);
      h.foot = jh.value("foot", false);
      cfg.hosts.push_back(std::move(h));
    }
    for (const auto& je : j.at("adjacency")) {
      if (!je.is_array() || je.size() != 2)
        throw ConfigError("adjacency entries must be [from, to] pairs");
      cfg.adjacency.emplace_back(je.at(0).get<std::string>(), je.at(1).get<std::string>());
    }
    return cfg;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("scenario JSON has the wrong shape: ") + e.what());
  }
}

std::string serialize_scenario(const ScenarioConfig& config) {
  json j;
  j["name"] = config.name;
  j["seed"] = config.seed;
  j["hosts"] = json::array();
  for (const auto& h : config.hosts) {
    json jh;
    jh["label"] = h.label;
    jh["subnet"] = to_string(h.subnet);
    jh["value"] = h.value;
    if (h.foot) jh["foot"] = true;
    j["hosts"].push_back(std::move(jh));
  }
  j["adjacency"] = json::array();
  for (const auto& [a, b] : config.adjacency) j["adjacency"].push_back(json::array({a, b}));
  return j.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& path) {
  return parse_scenario(read_text_file(path));
}

void save_scenario(const ScenarioConfig& config, const std::string& path) {
  write_text_file(path, serialize_scenario(config));
}

int Scenario::index_of(std::string_view label) const {
  const std::string needle = to_lower(label);
  for (int i = 0; i < host_count(); ++i)
    if (to_lower(labels[i]) == needle) return i;
  return -1;
}

bool Scenario::adjacent(int a, int b) const {
  if (a < 0 || b < 0 || a >= host_count() || b >= host_count()) return false;
  const auto& n = neighbors[a];
  return std::binary_search(n.begin(), n.end(), b);
}

std::string Scenario::action_name(const Action& action) const {
  if (!verb_takes_target(action.verb)) return to_string(action.verb);
  std::string out = to_string(action.verb);
  out += '(';
  out += (action.target >= 0 && action.target < host_count()) ? labels[action.target] : "?";
  out += ')';
  return out;
}

Scenario compile_scenario(const ScenarioConfig& config) {
  if (config.hosts.size() < 2) throw ConfigError("scenario needs at least two hosts");

  Scenario sc;
  sc.config = config;
  std::unordered_map<std::string, int> index;
  int foot_count = 0;
  for (const auto& h : config.hosts) {
    const std::string key = to_lower(h.label);
    if (key.empty()) throw ConfigError("host with empty label");
    if (index.count(key)) throw ConfigError("duplicate host label: " + h.label);
    index[key] = static_cast<int>(sc.labels.size());
    sc.labels.push_back(h.label);
    sc.subnets.push_back(h.subnet);
    sc.values.push_back(h.value);
    if (h.foot) {
      sc.foot = static_cast<int>(sc.labels.size()) - 1;
      ++foot_count;
    }
  }
  if (foot_count != 1)
    throw ConfigError("scenario must mark exactly one foothold host, found " +
                      std::to_string(foot_count));

  std::vector<std::set<int>> adj(sc.labels.size());
  for (const auto& [a, b] : config.adjacency) {
    const auto ia = index.find(to_lower(a));
    const auto ib = index.find(to_lower(b));
    if (ia == index.end()) throw ConfigError("adjacency names unknown host: " + a);
    if (ib == index.end()) throw ConfigError("adjacency names unknown host: " + b);
    if (ia->second == ib->second) throw ConfigError("adjacency self-loop on host: " + a);
    adj[static_cast<std::size_t>(ia->second)].insert(ib->second);
    adj[static_cast<std::size_t>(ib->second)].insert(ia->second);
  }
  sc.neighbors.reserve(adj.size());
  for (const auto& s : adj) sc.neighbors.emplace_back(s.begin(), s.end());
  if (sc.neighbors[static_cast<std::size_t>(sc.foot)].empty())
    throw ConfigError("foothold host " + sc.labels[static_cast<std::size_t>(sc.foot)] +
                      " has no links");

  sc.fingerprint = scenario_fingerprint(config);
  return sc;
}

std::uint64_t scenario_fingerprint(const ScenarioConfig& config) {
  // FNV-1a over a canonical structural rendering.
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&h](std::string_view s) {
    for (const char c : s) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  for (const auto& host : config.hosts) {
    feed(host.label);
    feed(to_string(host.subnet));
    feed(format_double(host.value));
    feed(host.foot ? "foot" : "-");
  }
  std::vector<std::string> edges;
  edges.reserve(config.adjacency.size());
  for (const auto& [a, b] : config.adjacency) {
    const std::string x = to_lower(a);
    const std::string y = to_lower(b);
    edges.push_back(x < y ? x + "|" + y : y + "|" + x);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& e : edges) feed(e);
  return h;
}

std::string fingerprint_hex(std::uint64_t fp) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[fp & 0xf];
    fp >>= 4;
  }
  return out;
}

}  // namespace cyberops::env
