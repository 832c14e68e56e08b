#include "cyberops/env/types.hpp"

#include <cassert>

#include "cyberops/common/text.hpp"

namespace cyberops::env {

double access_weight(AccessLevel level) {
  switch (level) {
    case AccessLevel::Unknown: return 0.0;
    case AccessLevel::Known: return 0.0;
    case AccessLevel::Exploited: return 0.5;
    case AccessLevel::Privileged: return 0.89;
  }
  return 0.0;
}

double subnet_value(SubnetKind kind) {
  switch (kind) {
    case SubnetKind::User: return 0.1;
    case SubnetKind::Enterprise: return 1.0;
    case SubnetKind::Operational: return 10.0;
  }
  return 0.0;
}

const char* to_string(Team team) { return team == Team::Red ? "red" : "blue"; }

const char* to_string(SubnetKind kind) {
  switch (kind) {
    case SubnetKind::User: return "user";
    case SubnetKind::Enterprise: return "enterprise";
    case SubnetKind::Operational: return "operational";
  }
  return "?";
}

const char* to_string(AccessLevel level) {
  switch (level) {
    case AccessLevel::Unknown: return "unknown";
    case AccessLevel::Known: return "known";
    case AccessLevel::Exploited: return "exploited";
    case AccessLevel::Privileged: return "privileged";
  }
  return "?";
}

const char* to_string(Verb verb) {
  switch (verb) {
    case Verb::Discover: return "Discover";
    case Verb::Exploit: return "Exploit";
    case Verb::Escalate: return "Escalate";
    case Verb::Monitor: return "Monitor";
    case Verb::Remove: return "Remove";
    case Verb::Restore: return "Restore";
    case Verb::Sleep: return "Sleep";
  }
  return "?";
}

std::optional<Team> team_from_string(std::string_view s) {
  const std::string t = to_lower(s);
  if (t == "red") return Team::Red;
  if (t == "blue") return Team::Blue;
  return std::nullopt;
}

std::optional<SubnetKind> subnet_from_string(std::string_view s) {
  const std::string t = to_lower(s);
  if (t == "user") return SubnetKind::User;
  if (t == "enterprise") return SubnetKind::Enterprise;
  if (t == "operational") return SubnetKind::Operational;
  return std::nullopt;
}

std::optional<Verb> verb_from_string(std::string_view s) {
  const std::string t = to_lower(s);
  if (t == "discover") return Verb::Discover;
  if (t == "exploit") return Verb::Exploit;
  if (t == "escalate") return Verb::Escalate;
  if (t == "monitor") return Verb::Monitor;
  if (t == "remove") return Verb::Remove;
  if (t == "restore") return Verb::Restore;
  if (t == "sleep") return Verb::Sleep;
  return std::nullopt;
}

bool verb_takes_target(Verb verb) {
  switch (verb) {
    case Verb::Discover:
    case Verb::Exploit:
    case Verb::Escalate:
    case Verb::Remove:
    case Verb::Restore:
      return true;
    case Verb::Monitor:
    case Verb::Sleep:
      return false;
  }
  return false;
}

bool verb_belongs_to(Verb verb, Team team) {
  switch (verb) {
    case Verb::Discover:
    case Verb::Exploit:
    case Verb::Escalate:
      return team == Team::Red;
    case Verb::Monitor:
    case Verb::Remove:
    case Verb::Restore:
      return team == Team::Blue;
    case Verb::Sleep:
      return true;
  }
  return false;
}

int action_ordinal(const Action& action, int host_count) {
  const int h = host_count;
  if (action.team == Team::Red) {
    switch (action.verb) {
      case Verb::Discover: return action.target;
      case Verb::Exploit: return h + action.target;
      case Verb::Escalate: return 2 * h + action.target;
      case Verb::Sleep: return 3 * h;
      default: break;
    }
  } else {
    switch (action.verb) {
      case Verb::Monitor: return 0;
      case Verb::Remove: return 1 + action.target;
      case Verb::Restore: return 1 + h + action.target;
      case Verb::Sleep: return 1 + 2 * h;
      default: break;
    }
  }
  assert(false && "action does not belong to its team");
  return -1;
}

int team_action_count(Team team, int host_count) {
  // Red includes the Sleep fallback; blue always has a non-empty verb set.
  return team == Team::Red ? 3 * host_count + 1 : 2 * host_count + 1;
}

Action action_from_ordinal(Team team, int ordinal, int host_count) {
  const int h = host_count;
  if (team == Team::Red) {
    if (ordinal < h) return {team, Verb::Discover, ordinal};
    if (ordinal < 2 * h) return {team, Verb::Exploit, ordinal - h};
    if (ordinal < 3 * h) return {team, Verb::Escalate, ordinal - 2 * h};
    return {team, Verb::Sleep, kNoTarget};
  }
  if (ordinal == 0) return {team, Verb::Monitor, kNoTarget};
  if (ordinal <= h) return {team, Verb::Remove, ordinal - 1};
  if (ordinal <= 2 * h) return {team, Verb::Restore, ordinal - 1 - h};
  return {team, Verb::Sleep, kNoTarget};
}

}  // namespace cyberops::env
