#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyberops/harness/trace.hpp"

namespace cyberops::harness {

// Collaboration counters and rates for one slice of an episode. A rate whose
// denominator is zero is absent, never a NaN placeholder.
struct SegmentMetrics {
  int steps = 0;
  int consulted = 0;
  int dilemma_consults = 0;
  int accepted = 0;
  int accepted_in_dilemma = 0;

  std::optional<double> collaboration_rate;  // consulted / steps
  std::optional<double> dilemma_rate;        // dilemma consults / consulted
  std::optional<double> accept_rate;         // accepted / consulted
  std::optional<double> dilemma_accept_rate; // accepted in dilemma / dilemma consults

  bool operator==(const SegmentMetrics&) const = default;
};

struct Metrics {
  int split_step = 0;  // early = steps before this index
  SegmentMetrics early;
  SegmentMetrics later;
  SegmentMetrics overall;

  bool operator==(const Metrics&) const = default;
};

Metrics compute_metrics(const std::vector<StepRecord>& steps, int split_step);

// First inconsistency among the step flags, if any: an acceptance without a
// consultation, or (when mentors are present) a dilemma without one.
std::optional<std::string> check_flag_invariants(const std::vector<StepRecord>& steps,
                                                 bool mentored);

// s(t) = factor * s(t-1) + (1 - factor) * x(t), seeded with s(-1) = 0.
std::vector<double> exponential_smoothing(const std::vector<double>& values, double factor);

struct ConfidenceInterval {
  double low = 0.0;
  double high = 0.0;

  bool operator==(const ConfidenceInterval&) const = default;
};

// Two-sided confidence interval for the mean of a sample, using the
// t-distribution with n-1 degrees of freedom. A single sample has zero width.
ConfidenceInterval mean_confidence_interval(const std::vector<double>& samples,
                                            double confidence);

double mean_of(const std::vector<double>& samples);

}  // namespace cyberops::harness
