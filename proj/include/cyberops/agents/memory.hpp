#pragma once

#include <string>
#include <vector>

#include "cyberops/agents/prompts.hpp"
#include "cyberops/env/types.hpp"
#include "cyberops/llm/gateway.hpp"

namespace cyberops::agents {

// One remembered step of an episode.
struct MemoryRecord {
  int timestamp = 0;                // step the record was written at
  std::vector<double> observation;  // the step's observation vector
  std::string action;
  bool success = false;
  double reward = 0.0;
  int importance = 5;  // 0..10

  bool operator==(const MemoryRecord&) const = default;
};

// Zero-safe: either vector all-zero (or empty) scores 0.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

// Relevance of a past record to the current step: scaled importance, times
// non-negative similarity, decayed by the age gap in steps.
double retrieval_score(int importance, double cosine, int gap);

// Per-episode store; retrieval returns the two most relevant records.
class MemoryStore {
 public:
  void add(MemoryRecord record) { records_.push_back(std::move(record)); }
  void clear() { records_.clear(); }
  std::size_t size() const { return records_.size(); }
  const std::vector<MemoryRecord>& records() const { return records_; }

  // Top-2 by retrieval score; ties broken by newer timestamp, then by earlier
  // insertion. Records from the current step (gap < 1) are skipped.
  std::vector<MemoryRecord> retrieve(const std::vector<double>& query, int now) const;

 private:
  std::vector<MemoryRecord> records_;
};

// Asks the language backend to score a step 0..10; an unparseable or failed
// reply falls back to 5 with a warning.
int rate_importance(llm::CompletionGateway& gateway, const PromptLibrary& prompts,
                    env::Team team, const std::string& action_name, bool success,
                    double reward_delta);

}  // namespace cyberops::agents
