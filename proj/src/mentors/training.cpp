#include "cyberops/mentors/training.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>

#include "cyberops/common/errors.hpp"
#include "cyberops/env/adversaries.hpp"

namespace cyberops::mentors {
namespace {

void validate(const TrainConfig& cfg) {
  if (cfg.episodes < 1) throw ConfigError("training needs at least one episode");
  if (cfg.max_steps < 1) throw ConfigError("training needs at least one step per episode");
  if (!(cfg.learning_rate > 0.0 && cfg.learning_rate <= 1.0))
    throw ConfigError("learning rate must be in (0, 1]");
  if (!(cfg.discount >= 0.0 && cfg.discount <= 1.0))
    throw ConfigError("discount must be in [0, 1]");
  for (const double eps : {cfg.epsilon_start, cfg.epsilon_end})
    if (!(eps >= 0.0 && eps <= 1.0)) throw ConfigError("exploration rates must be in [0, 1]");
}

double epsilon_for(const TrainConfig& cfg, int episode) {
  const int half = std::max(1, cfg.episodes / 2);
  if (episode >= half) return cfg.epsilon_end;
  return cfg.epsilon_start +
         (cfg.epsilon_end - cfg.epsilon_start) * static_cast<double>(episode) / half;
}

env::Action opponent_action(env::Team team, const env::NetworkState& state, Rng& env_rng) {
  if (team == env::Team::Red)
    return env::scripted_blue(env::observe(state, env::Team::Blue), env_rng);
  return env::scripted_red(state);
}

double step_reward(env::Team team, const env::StepOutcome& outcome) {
  return team == env::Team::Red ? outcome.red_reward : outcome.blue_reward;
}

int greedy_ordinal(const std::map<std::string, std::vector<double>>& table,
                   const std::string& key, const std::vector<env::Action>& legal, int H) {
  const auto row = table.find(key);
  int best = env::action_ordinal(legal.front(), H);
  if (row == table.end()) return best;
  double best_value = row->second[static_cast<std::size_t>(best)];
  for (const auto& a : legal) {
    const int ord = env::action_ordinal(a, H);
    const double v = row->second[static_cast<std::size_t>(ord)];
    if (v > best_value) {
      best_value = v;
      best = ord;
    }
  }
  return best;
}

std::vector<double> masked_softmax(const std::vector<std::vector<double>>& weights,
                                   const std::vector<double>& features,
                                   const std::vector<int>& ordinals) {
  std::vector<double> logits(ordinals.size());
  for (std::size_t i = 0; i < ordinals.size(); ++i) {
    const auto& w = weights[static_cast<std::size_t>(ordinals[i])];
    logits[i] = std::inner_product(w.begin(), w.end(), features.begin(), 0.0);
  }
  const double peak = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (double& l : logits) {
    l = std::exp(l - peak);
    total += l;
  }
  for (double& l : logits) l /= total;
  return logits;
}

std::size_t sample_index(const std::vector<double>& probabilities, Rng& rng) {
  const double u = rng.uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    acc += probabilities[i];
    if (u < acc) return i;
  }
  return probabilities.size() - 1;
}

}  // namespace

void q_update(std::map<std::string, std::vector<double>>& table, const Transition& transition,
              double learning_rate, double discount, int action_count) {
  assert(transition.action >= 0 && transition.action < action_count);
  auto& row = table
                  .try_emplace(transition.state,
                               std::vector<double>(static_cast<std::size_t>(action_count), 0.0))
                  .first->second;
  double best_next = 0.0;
  if (const auto next = table.find(transition.next_state); next != table.end())
    best_next = *std::max_element(next->second.begin(), next->second.end());
  double& q = row[static_cast<std::size_t>(transition.action)];
  q += learning_rate * (transition.reward + discount * best_next - q);
}

TrainResult train_mentor(Algorithm algorithm, const env::ScenarioConfig& scenario,
                         const TrainConfig& config, env::Team team) {
  validate(config);
  const auto compiled = std::make_shared<const env::Scenario>(env::compile_scenario(scenario));
  const int H = compiled->host_count();

  TrainResult result;
  result.artifact = make_blank_policy(algorithm, team, compiled);
  result.artifact.meta.seed = config.seed;
  result.artifact.meta.episodes = config.episodes;

  std::vector<double> episode_totals;
  episode_totals.reserve(static_cast<std::size_t>(config.episodes));

  for (int episode = 0; episode < config.episodes; ++episode) {
    auto state = env::build_scenario(compiled);
    state.rng = Rng(Rng::mix(config.seed, static_cast<std::uint64_t>(2 * episode + 1)));
    Rng agent_rng(Rng::mix(config.seed, static_cast<std::uint64_t>(2 * episode + 2)));
    const double epsilon = epsilon_for(config, episode);

    auto obs = env::observe(state, team);
    double total = 0.0;

    // Per-step records for the end-of-episode gradient update.
    std::vector<std::vector<double>> step_features;
    std::vector<std::vector<int>> step_legal;
    std::vector<std::size_t> step_choice;
    std::vector<double> step_rewards;

    for (int t = 0; t < config.max_steps; ++t) {
      const auto legal = env::legal_actions(state, team);
      std::vector<int> ordinals(legal.size());
      for (std::size_t i = 0; i < legal.size(); ++i) ordinals[i] = env::action_ordinal(legal[i], H);

      env::Action chosen;
      std::size_t chosen_index = 0;
      if (algorithm == Algorithm::QLearning) {
        if (agent_rng.uniform01() < epsilon) {
          chosen_index = static_cast<std::size_t>(
              agent_rng.uniform_int(0, static_cast<int>(legal.size()) - 1));
        } else {
          const int ord = greedy_ordinal(result.artifact.values, obs.state_key(), legal, H);
          chosen_index = static_cast<std::size_t>(
              std::find(ordinals.begin(), ordinals.end(), ord) - ordinals.begin());
        }
      } else {
        const auto features = policy_features(obs);
        const auto probs = masked_softmax(result.artifact.weights, features, ordinals);
        chosen_index = sample_index(probs, agent_rng);
        step_features.push_back(features);
        step_legal.push_back(ordinals);
        step_choice.push_back(chosen_index);
      }
      chosen = legal[chosen_index];

      const env::Action opponent = opponent_action(team, state, state.rng);
      auto [next_state, outcome] = env::apply_step(
          std::move(state), team == env::Team::Red ? chosen : opponent,
          team == env::Team::Blue ? chosen : opponent);
      state = std::move(next_state);
      const double r = step_reward(team, outcome);
      total += r;
      const auto next_obs = env::observe(state, team);

      if (algorithm == Algorithm::QLearning) {
        q_update(result.artifact.values,
                 {obs.state_key(), env::action_ordinal(chosen, H), r, next_obs.state_key()},
                 config.learning_rate, config.discount, result.artifact.action_count());
      } else {
        step_rewards.push_back(r);
      }
      obs = next_obs;
    }

    if (algorithm == Algorithm::PolicyGradient) {
      // Discounted returns, normalized within the episode to tame the scale.
      std::vector<double> returns(step_rewards.size());
      double g = 0.0;
      for (std::size_t i = step_rewards.size(); i-- > 0;) {
        g = step_rewards[i] + config.discount * g;
        returns[i] = g;
      }
      const double mean = std::accumulate(returns.begin(), returns.end(), 0.0) /
                          static_cast<double>(returns.size());
      double var = 0.0;
      for (const double v : returns) var += (v - mean) * (v - mean);
      const double sd = std::sqrt(var / static_cast<double>(returns.size()));
      const double scale = sd > 1e-8 ? sd : 1.0;

      for (std::size_t t = 0; t < step_rewards.size(); ++t) {
        const double advantage = (returns[t] - mean) / scale;
        const auto probs =
            masked_softmax(result.artifact.weights, step_features[t], step_legal[t]);
        for (std::size_t i = 0; i < step_legal[t].size(); ++i) {
          const double indicator = i == step_choice[t] ? 1.0 : 0.0;
          const double coeff = config.learning_rate * advantage * (indicator - probs[i]);
          auto& w = result.artifact.weights[static_cast<std::size_t>(step_legal[t][i])];
          for (std::size_t f = 0; f < w.size(); ++f) w[f] += coeff * step_features[t][f];
        }
      }
    }

    episode_totals.push_back(total);
  }

  constexpr int kWindow = 100;
  for (std::size_t start = 0; start < episode_totals.size(); start += kWindow) {
    const auto end = std::min(episode_totals.size(), start + kWindow);
    const double sum = std::accumulate(episode_totals.begin() + static_cast<std::ptrdiff_t>(start),
                                       episode_totals.begin() + static_cast<std::ptrdiff_t>(end),
                                       0.0);
    result.curve.push_back(sum / static_cast<double>(end - start));
  }
  return result;
}

double evaluate_policy(const PolicyArtifact& artifact, const std::vector<std::uint64_t>& seeds,
                       int max_steps) {
  double total = 0.0;
  for (const std::uint64_t seed : seeds) {
    auto state = env::build_scenario(artifact.scenario);
    state.rng = Rng(seed);
    double episode = 0.0;
    for (int t = 0; t < max_steps; ++t) {
      const auto obs = env::observe(state, artifact.team);
      const auto top = artifact.suggest(obs, 1);
      const env::Action chosen = top.front().action;
      const env::Action opponent = opponent_action(artifact.team, state, state.rng);
      auto [next_state, outcome] = env::apply_step(
          std::move(state), artifact.team == env::Team::Red ? chosen : opponent,
          artifact.team == env::Team::Blue ? chosen : opponent);
      state = std::move(next_state);
      episode += step_reward(artifact.team, outcome);
    }
    total += episode;
  }
  return total / static_cast<double>(seeds.size());
}

double evaluate_random(env::Team team, const env::ScenarioConfig& scenario,
                       const std::vector<std::uint64_t>& seeds, int max_steps) {
  const auto compiled = std::make_shared<const env::Scenario>(env::compile_scenario(scenario));
  double total = 0.0;
  for (const std::uint64_t seed : seeds) {
    auto state = env::build_scenario(compiled);
    state.rng = Rng(seed);
    Rng agent_rng(Rng::mix(seed, 0xbadcafe));
    double episode = 0.0;
    for (int t = 0; t < max_steps; ++t) {
      const auto legal = env::legal_actions(state, team);
      const env::Action chosen = agent_rng.pick(legal);
      const env::Action opponent = opponent_action(team, state, state.rng);
      auto [next_state, outcome] = env::apply_step(
          std::move(state), team == env::Team::Red ? chosen : opponent,
          team == env::Team::Blue ? chosen : opponent);
      state = std::move(next_state);
      episode += step_reward(team, outcome);
    }
    total += episode;
  }
  return total / static_cast<double>(seeds.size());
}

}  // namespace cyberops::mentors
