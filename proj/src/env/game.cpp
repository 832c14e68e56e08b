#include "cyberops/env/game.hpp"

#include <cassert>

namespace cyberops::env {
namespace {

AccessLevel source_level(Verb verb) {
  switch (verb) {
    case Verb::Discover: return AccessLevel::Unknown;
    case Verb::Exploit: return AccessLevel::Known;
    case Verb::Escalate: return AccessLevel::Exploited;
    default: break;
  }
  assert(false);
  return AccessLevel::Unknown;
}

AccessLevel result_level(Verb verb) {
  switch (verb) {
    case Verb::Discover: return AccessLevel::Known;
    case Verb::Exploit: return AccessLevel::Exploited;
    case Verb::Escalate: return AccessLevel::Privileged;
    default: break;
  }
  assert(false);
  return AccessLevel::Unknown;
}

bool malformed(const Scenario& sc, Team side, const Action& a) {
  if (a.team != side || !verb_belongs_to(a.verb, side)) return true;
  if (verb_takes_target(a.verb))
    return a.target < 0 || a.target >= sc.host_count();
  return a.target != kNoTarget;
}

// Red verbs that launch from a neighbor need a sufficiently compromised
// launchpad in the true state; Escalate acts on the host itself.
bool reachable_in_truth(const NetworkState& st, Verb verb, int h) {
  if (verb == Verb::Escalate) return true;
  const AccessLevel need = verb == Verb::Discover ? AccessLevel::Privileged : AccessLevel::Exploited;
  for (const int g : st.scenario->neighbors[static_cast<std::size_t>(h)])
    if (st.truth[static_cast<std::size_t>(g)] >= need) return true;
  return false;
}

}  // namespace

std::vector<double> Observation::to_vector() const {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(dimension()));
  v.push_back(static_cast<double>(success));
  for (const int a : activity) v.push_back(static_cast<double>(a));
  for (const AccessLevel s : status) v.push_back(static_cast<double>(s) / 3.0);
  return v;
}

std::string Observation::state_key() const {
  std::string key;
  key.reserve(static_cast<std::size_t>(dimension()));
  key.push_back(static_cast<char>('0' + success));
  for (const int a : activity) key.push_back(static_cast<char>('0' + a));
  for (const AccessLevel s : status) key.push_back(static_cast<char>('0' + static_cast<int>(s)));
  return key;
}

NetworkState build_scenario(const ScenarioConfig& config) {
  return build_scenario(std::make_shared<const Scenario>(compile_scenario(config)));
}

NetworkState build_scenario(std::shared_ptr<const Scenario> scenario) {
  NetworkState st;
  const auto n = static_cast<std::size_t>(scenario->host_count());
  st.truth.assign(n, AccessLevel::Unknown);
  st.red_belief.assign(n, AccessLevel::Unknown);
  st.red_alert.assign(n, false);
  st.blue_view.assign(n, AccessLevel::Unknown);
  st.blue_alert.assign(n, false);
  st.pending.assign(n, false);
  st.truth[static_cast<std::size_t>(scenario->foot)] = AccessLevel::Privileged;
  st.red_belief[static_cast<std::size_t>(scenario->foot)] = AccessLevel::Privileged;
  st.rng = Rng(scenario->config.seed);
  st.scenario = std::move(scenario);
  return st;
}

double compute_reward(const NetworkState& state) {
  double total = 0.0;
  for (std::size_t i = 0; i < state.truth.size(); ++i)
    total += state.scenario->values[i] * access_weight(state.truth[i]);
  return total;
}

std::vector<Action> legal_actions_for_view(const Scenario& scenario, Team team,
                                           const std::vector<AccessLevel>& view) {
  std::vector<Action> out;
  const int H = scenario.host_count();
  if (team == Team::Blue) {
    out.reserve(static_cast<std::size_t>(2 * H + 1));
    out.push_back({Team::Blue, Verb::Monitor, kNoTarget});
    for (int h = 0; h < H; ++h) out.push_back({Team::Blue, Verb::Remove, h});
    for (int h = 0; h < H; ++h) out.push_back({Team::Blue, Verb::Restore, h});
    return out;
  }

  auto has_neighbor_at_least = [&](int h, AccessLevel need) {
    for (const int g : scenario.neighbors[static_cast<std::size_t>(h)])
      if (view[static_cast<std::size_t>(g)] >= need) return true;
    return false;
  };
  for (int h = 0; h < H; ++h)
    if (view[static_cast<std::size_t>(h)] == AccessLevel::Unknown &&
        has_neighbor_at_least(h, AccessLevel::Privileged))
      out.push_back({Team::Red, Verb::Discover, h});
  // Exploit stays available on any at-least-Known host so red can re-compromise
  // after a defensive reset it has not yet noticed (stale belief; the attempt
  // fails in truth and resynchronizes the belief instead of deadlocking).
  for (int h = 0; h < H; ++h)
    if (view[static_cast<std::size_t>(h)] >= AccessLevel::Known &&
        has_neighbor_at_least(h, AccessLevel::Exploited))
      out.push_back({Team::Red, Verb::Exploit, h});
  for (int h = 0; h < H; ++h)
    if (view[static_cast<std::size_t>(h)] == AccessLevel::Exploited)
      out.push_back({Team::Red, Verb::Escalate, h});
  if (out.empty()) out.push_back({Team::Red, Verb::Sleep, kNoTarget});
  return out;
}

std::vector<Action> legal_actions(const NetworkState& state, Team team) {
  return legal_actions_for_view(*state.scenario, team,
                                team == Team::Red ? state.red_belief : state.blue_view);
}

std::pair<NetworkState, StepOutcome> apply_step(NetworkState st, const Action& red,
                                                const Action& blue) {
  const Scenario& sc = *st.scenario;
  StepOutcome out;

  // Red resolves first, against the true state.
  if (malformed(sc, Team::Red, red)) {
    out.red_rejected = true;
  } else if (red.verb == Verb::Sleep) {
    out.red_success = true;
  } else {
    const auto h = static_cast<std::size_t>(red.target);
    st.pending[h] = true;  // any attempt is visible to the defender's Monitor
    if (reachable_in_truth(st, red.verb, red.target) && st.truth[h] == source_level(red.verb)) {
      st.truth[h] = result_level(red.verb);
      st.red_belief[h] = st.truth[h];
      st.red_alert[h] = false;
      out.red_success = true;
    } else {
      // Failure teaches red the true status; a surprise means blue was here.
      if (st.red_belief[h] != st.truth[h]) st.red_alert[h] = true;
      st.red_belief[h] = st.truth[h];
    }
  }
  st.red_last_success = out.red_success;

  // Blue resolves second, seeing red's action of this same step via Monitor.
  if (malformed(sc, Team::Blue, blue)) {
    out.blue_rejected = true;
  } else {
    switch (blue.verb) {
      case Verb::Monitor:
        for (std::size_t h = 0; h < st.pending.size(); ++h) {
          st.blue_alert[h] = st.pending[h];
          if (st.pending[h]) st.blue_view[h] = st.truth[h];
          st.pending[h] = false;
        }
        out.blue_success = true;
        break;
      case Verb::Remove:
      case Verb::Restore: {
        const auto h = static_cast<std::size_t>(blue.target);
        const AccessLevel want =
            blue.verb == Verb::Remove ? AccessLevel::Exploited : AccessLevel::Privileged;
        st.blue_alert[h] = false;  // the flagged host has been handled
        if (st.truth[h] == want) {
          st.truth[h] = AccessLevel::Known;
          st.blue_view[h] = AccessLevel::Known;
          out.blue_success = true;
        } else {
          st.blue_view[h] = st.truth[h];  // failure still reveals the truth
        }
        break;
      }
      case Verb::Sleep:
        out.blue_success = true;
        break;
      default:
        break;
    }
  }
  st.blue_last_success = out.blue_success;

  out.red_reward = compute_reward(st);
  out.blue_reward = -out.red_reward;
  st.step += 1;
  out.red_observation = observe(st, Team::Red);
  out.blue_observation = observe(st, Team::Blue);
  return {std::move(st), out};
}

Observation observe(const NetworkState& state, Team team) {
  Observation o;
  const std::size_t n = state.truth.size();
  o.activity.resize(n);
  o.status.resize(n);
  if (team == Team::Red) {
    o.success = state.red_last_success ? 1 : 0;
    for (std::size_t h = 0; h < n; ++h) {
      o.activity[h] = state.red_alert[h] ? 1 : 0;
      o.status[h] = state.red_belief[h];
    }
  } else {
    o.success = state.blue_last_success ? 1 : 0;
    for (std::size_t h = 0; h < n; ++h) {
      o.activity[h] = state.blue_alert[h] ? 1 : 0;
      o.status[h] = state.blue_view[h];
    }
  }
  return o;
}

}  // namespace cyberops::env
