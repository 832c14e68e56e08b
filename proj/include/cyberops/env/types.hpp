#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace cyberops::env {

enum class Team : std::uint8_t { Red, Blue };

enum class SubnetKind : std::uint8_t { User, Enterprise, Operational };

// Per-host compromise ladder, ordered from no knowledge to full control.
enum class AccessLevel : std::uint8_t { Unknown = 0, Known = 1, Exploited = 2, Privileged = 3 };

// Contribution of an access level to the per-host reward term.
double access_weight(AccessLevel level);

// Default per-host value of a subnet kind.
double subnet_value(SubnetKind kind);

enum class Verb : std::uint8_t {
  Discover,   // red: reveal an unknown reachable host
  Exploit,    // red: gain user access on a known host
  Escalate,   // red: gain root on an exploited host
  Monitor,    // blue: refresh the defender's activity snapshot
  Remove,     // blue: evict user-level access
  Restore,    // blue: rebuild a rooted host
  Sleep,      // no-op fallback when a team has nothing to do
};

const char* to_string(Team team);
const char* to_string(SubnetKind kind);
const char* to_string(AccessLevel level);
const char* to_string(Verb verb);
std::optional<Team> team_from_string(std::string_view s);
std::optional<SubnetKind> subnet_from_string(std::string_view s);
std::optional<Verb> verb_from_string(std::string_view s);

bool verb_takes_target(Verb verb);
bool verb_belongs_to(Verb verb, Team team);  // Sleep belongs to both teams

inline constexpr int kNoTarget = -1;

struct Action {
  Team team = Team::Red;
  Verb verb = Verb::Sleep;
  int target = kNoTarget;  // host index, kNoTarget for Monitor/Sleep

  bool operator==(const Action&) const = default;
};

// Canonical per-team ordinal used for tie-breaks and value-table indexing:
// red Discover(0..H-1), Exploit(0..H-1), Escalate(0..H-1), Sleep;
// blue Monitor, Remove(0..H-1), Restore(0..H-1).
int action_ordinal(const Action& action, int host_count);
int team_action_count(Team team, int host_count);
Action action_from_ordinal(Team team, int ordinal, int host_count);

}  // namespace cyberops::env
