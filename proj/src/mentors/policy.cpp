#include "cyberops/mentors/policy.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/version.hpp"

namespace cyberops::mentors {

using nlohmann::json;

namespace {
constexpr int kSchemaVersion = 1;
constexpr const char* kFormatTag = "cyberops-policy";
}  // namespace

const char* to_string(Algorithm algorithm) {
  return algorithm == Algorithm::QLearning ? "q_learning" : "policy_gradient";
}

int PolicyArtifact::action_count() const {
  return env::team_action_count(team, scenario->host_count());
}

int PolicyArtifact::feature_count() const { return 1 + 2 * scenario->host_count() + 1; }

std::vector<double> policy_features(const env::Observation& observation) {
  std::vector<double> f = observation.to_vector();
  f.push_back(1.0);
  return f;
}

PolicyArtifact make_blank_policy(Algorithm algorithm, env::Team team,
                                 std::shared_ptr<const env::Scenario> scenario) {
  PolicyArtifact artifact;
  artifact.meta.algorithm = algorithm;
  artifact.meta.mentor_id = algorithm == Algorithm::QLearning ? "q" : "pg";
  artifact.team = team;
  artifact.scenario = std::move(scenario);
  if (algorithm == Algorithm::PolicyGradient)
    artifact.weights.assign(static_cast<std::size_t>(artifact.action_count()),
                            std::vector<double>(static_cast<std::size_t>(artifact.feature_count()),
                                                0.0));
  return artifact;
}

std::vector<Suggestion> PolicyArtifact::suggest(const env::Observation& observation,
                                                int k) const {
  const auto legal = env::legal_actions_for_view(*scenario, team, observation.status);
  const int H = scenario->host_count();

  std::vector<double> scores(legal.size(), 0.0);
  bool fallback = false;
  if (meta.algorithm == Algorithm::QLearning) {
    const auto row = values.find(observation.state_key());
    if (row == values.end()) {
      fallback = true;
    } else {
      for (std::size_t i = 0; i < legal.size(); ++i)
        scores[i] = row->second[static_cast<std::size_t>(env::action_ordinal(legal[i], H))];
    }
  } else {
    const auto f = policy_features(observation);
    for (std::size_t i = 0; i < legal.size(); ++i) {
      const auto& w = weights[static_cast<std::size_t>(env::action_ordinal(legal[i], H))];
      scores[i] = std::inner_product(w.begin(), w.end(), f.begin(), 0.0);
    }
  }

  // Softmax at temperature 1, shifted by the max for stability.
  const double peak = *std::max_element(scores.begin(), scores.end());
  std::vector<double> conf(legal.size());
  double total = 0.0;
  for (std::size_t i = 0; i < legal.size(); ++i) {
    conf[i] = std::exp(scores[i] - peak);
    total += conf[i];
  }
  for (double& c : conf) c /= total;

  std::vector<std::size_t> order(legal.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (conf[a] != conf[b]) return conf[a] > conf[b];
    return env::action_ordinal(legal[a], H) < env::action_ordinal(legal[b], H);
  });

  const auto take = std::min<std::size_t>(static_cast<std::size_t>(std::max(k, 0)), legal.size());
  std::vector<Suggestion> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    Suggestion s;
    s.action = legal[order[i]];
    s.confidence = conf[order[i]];
    s.mentor_id = meta.mentor_id;
    s.uniform_fallback = fallback;
    out.push_back(std::move(s));
  }
  return out;
}

void save_policy(const PolicyArtifact& artifact, const std::string& path) {
  json j;
  j["format"] = kFormatTag;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kVersion;
  j["algorithm"] = to_string(artifact.meta.algorithm);
  j["mentor_id"] = artifact.meta.mentor_id;
  j["team"] = env::to_string(artifact.team);
  j["seed"] = artifact.meta.seed;
  j["episodes"] = artifact.meta.episodes;
  j["scenario_hash"] = env::fingerprint_hex(artifact.scenario->fingerprint);
  j["scenario"] = json::parse(env::serialize_scenario(artifact.scenario->config));

  json actions = json::array();
  const int H = artifact.scenario->host_count();
  for (int i = 0; i < artifact.action_count(); ++i)
    actions.push_back(artifact.scenario->action_name(env::action_from_ordinal(artifact.team, i, H)));
  j["actions"] = std::move(actions);

  if (artifact.meta.algorithm == Algorithm::QLearning) {
    json body = json::object();
    for (const auto& [key, row] : artifact.values) body[key] = row;
    j["values"] = std::move(body);
  } else {
    j["weights"] = artifact.weights;
  }
  write_text_file(path, j.dump(2) + "\n");
}

PolicyArtifact load_policy(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ArtifactError("policy file is not valid JSON: " + path + ": " + e.what());
  }
  try {
    if (j.value("format", std::string()) != kFormatTag)
      throw ArtifactError("not a policy file: " + path);
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw ArtifactError("unsupported policy schema version in " + path);

    PolicyArtifact artifact;
    const std::string algo = j.at("algorithm").get<std::string>();
    if (algo == "q_learning")
      artifact.meta.algorithm = Algorithm::QLearning;
    else if (algo == "policy_gradient")
      artifact.meta.algorithm = Algorithm::PolicyGradient;
    else
      throw ArtifactError("unknown algorithm tag: " + algo);

    artifact.meta.mentor_id = j.at("mentor_id").get<std::string>();
    artifact.meta.seed = j.at("seed").get<std::uint64_t>();
    artifact.meta.episodes = j.at("episodes").get<int>();
    const auto team = env::team_from_string(j.at("team").get<std::string>());
    if (!team) throw ArtifactError("unknown team tag in " + path);
    artifact.team = *team;

    artifact.scenario = std::make_shared<const env::Scenario>(
        env::compile_scenario(env::parse_scenario(j.at("scenario").dump())));
    if (env::fingerprint_hex(artifact.scenario->fingerprint) !=
        j.at("scenario_hash").get<std::string>())
      throw ArtifactError("policy scenario hash does not match its embedded scenario: " + path);

    if (j.at("actions").size() != static_cast<std::size_t>(artifact.action_count()))
      throw ArtifactError("policy action mapping does not fit its scenario: " + path);

    if (artifact.meta.algorithm == Algorithm::QLearning) {
      for (const auto& [key, row] : j.at("values").items()) {
        auto values = row.get<std::vector<double>>();
        if (values.size() != static_cast<std::size_t>(artifact.action_count()))
          throw ArtifactError("value row width does not fit the action mapping: " + path);
        artifact.values.emplace(key, std::move(values));
      }
    } else {
      artifact.weights = j.at("weights").get<std::vector<std::vector<double>>>();
      if (artifact.weights.size() != static_cast<std::size_t>(artifact.action_count()))
        throw ArtifactError("weight matrix does not fit the action mapping: " + path);
      for (const auto& row : artifact.weights)
        if (row.size() != static_cast<std::size_t>(artifact.feature_count()))
          throw ArtifactError("weight row width does not fit the feature count: " + path);
    }
    return artifact;
  } catch (const json::exception& e) {
    throw ArtifactError("policy file has the wrong shape: " + path + ": " + e.what());
  }
}

PolicyArtifact persist_roundtrip(const PolicyArtifact& artifact, const std::string& path) {
  save_policy(artifact, path);
  return load_policy(path);
}

void verify_scenario(const PolicyArtifact& artifact, const env::Scenario& scenario) {
  if (artifact.scenario->fingerprint != scenario.fingerprint)
    throw ArtifactError("policy '" + artifact.meta.mentor_id +
                        "' was trained for a different scenario (hash " +
                        env::fingerprint_hex(artifact.scenario->fingerprint) + " vs " +
                        env::fingerprint_hex(scenario.fingerprint) + ")");
}

}  // namespace cyberops::mentors
