#include "cyberops/agents/memory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cyberops/common/log.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/llm/parsers.hpp"

namespace cyberops::agents {

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) return 0.0;
  const double dot = std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  const double na = std::sqrt(std::inner_product(a.begin(), a.end(), a.begin(), 0.0));
  const double nb = std::sqrt(std::inner_product(b.begin(), b.end(), b.begin(), 0.0));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (na * nb);
}

double retrieval_score(int importance, double cosine, int gap) {
  if (gap < 1) gap = 1;
  return (importance / 10.0) * std::max(0.0, cosine) / gap;
}

std::vector<MemoryRecord> MemoryStore::retrieve(const std::vector<double>& query,
                                                int now) const {
  struct Scored {
    double score;
    int timestamp;
    std::size_t index;
  };
  std::vector<Scored> scored;
  scored.reserve(records_.size());
  for (std::size_t i = 0; i < records_.size(); ++i) {
    const auto& r = records_[i];
    const int gap = now - r.timestamp;
    if (gap < 1) continue;
    scored.push_back(
        {retrieval_score(r.importance, cosine_similarity(query, r.observation), gap),
         r.timestamp, i});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.timestamp != b.timestamp) return a.timestamp > b.timestamp;
    return a.index < b.index;
  });
  std::vector<MemoryRecord> out;
  for (std::size_t i = 0; i < scored.size() && i < 2; ++i)
    out.push_back(records_[scored[i].index]);
  return out;
}

int rate_importance(llm::CompletionGateway& gateway, const PromptLibrary& prompts,
                    env::Team team, const std::string& action_name, bool success,
                    double reward_delta) {
  const std::string prompt = prompts.render(
      "importance", {
                        {"role", env::to_string(team)},
                        {"action", action_name},
                        {"success", success ? "yes" : "no"},
                        {"reward_delta", format_double(reward_delta)},
                    });
  std::string reply;
  try {
    reply = gateway.complete({"You score how memorable game events are.", prompt}).text;
  } catch (const llm::GatewayError& err) {
    log_warn(std::string("importance request failed, defaulting to 5: ") + err.what());
    return 5;
  }
  if (const auto score = llm::parse_importance(reply)) return *score;
  log_warn("importance reply had no usable score, defaulting to 5: " + reply);
  return 5;
}

}  // namespace cyberops::agents
