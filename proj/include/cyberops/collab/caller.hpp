#pragma once

#include <atomic>
#include <cstdint>
#include <vector>

#include "cyberops/collab/aggregator.hpp"
#include "cyberops/mentors/policy.hpp"

namespace cyberops::collab {

// A set of trained policies queried on the agent's behalf. A routine consult
// returns the single best merged suggestion; a call for help (raised when the
// agent is stuck) returns the top three so the decision step sees options.
class MentorPool {
 public:
  void add(mentors::PolicyArtifact mentor);
  std::size_t size() const { return mentors_.size(); }
  const std::vector<mentors::PolicyArtifact>& mentors() const { return mentors_; }

  // Top-3 per mentor, in configuration order. No aggregation.
  std::vector<std::vector<mentors::Suggestion>> query_all(const env::Observation& obs) const;

  std::vector<mentors::Suggestion> consult(const env::Observation& obs) const;
  std::vector<mentors::Suggestion> call_for_help(const env::Observation& obs) const;

  // Total individual mentor queries served, for instrumentation.
  std::uint64_t query_count() const { return query_count_.load(); }

 private:
  std::vector<mentors::PolicyArtifact> mentors_;
  mutable std::atomic<std::uint64_t> query_count_{0};
};

}  // namespace cyberops::collab
