#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyberops/env/types.hpp"
#include "cyberops/harness/metrics.hpp"
#include "cyberops/harness/trace.hpp"

namespace cyberops::harness {

// Agent configurations compared by the harness: no mentors, one mentor, or a
// panel of mentors.
enum class ExperimentGroup { Independent, SingleMentor, MultiMentor };

const char* to_string(ExperimentGroup group);
std::optional<ExperimentGroup> group_from_string(std::string_view s);

// Cross-run aggregate for one step index.
struct StepAggregate {
  int step = 0;
  double mean_step_reward = 0.0;
  double smoothed_step_reward = 0.0;
  ConfidenceInterval step_ci;
  double mean_cumulative_reward = 0.0;
  double smoothed_cumulative_reward = 0.0;
  ConfidenceInterval cumulative_ci;

  bool operator==(const StepAggregate&) const = default;
};

// Rates averaged over the runs where they were defined; absent when no run
// defined them.
struct SummaryRates {
  std::optional<double> collaboration_rate;
  std::optional<double> dilemma_rate;
  std::optional<double> accept_rate;
  std::optional<double> dilemma_accept_rate;

  bool operator==(const SummaryRates&) const = default;
};

struct MetricsSummary {
  SummaryRates early;
  SummaryRates later;
  SummaryRates overall;

  bool operator==(const MetricsSummary&) const = default;
};

struct MetricsReport {
  int schema_version = 1;
  std::string version;
  ExperimentGroup group = ExperimentGroup::Independent;
  env::Team team = env::Team::Red;
  int episode_length = 0;
  int split_step = 0;
  std::vector<std::uint64_t> seeds;  // configured run seeds
  bool partial = false;              // true when some runs did not finish
  std::vector<StepAggregate> steps;
  std::vector<Metrics> per_run;  // one per completed run, in seed order
  MetricsSummary summary;

  bool operator==(const MetricsReport&) const = default;
};

// Pure aggregation of completed episode traces into a report. Every trace
// must have exactly episode_length steps; partial is set when fewer traces
// than seeds arrive.
MetricsReport build_report(ExperimentGroup group, env::Team team,
                           const std::vector<std::uint64_t>& seeds,
                           const std::vector<EpisodeTrace>& traces, int episode_length,
                           int split_step, double smoothing, double confidence);

// CSV rendering uses shortest round-trip number formatting, so equal reports
// always produce byte-identical text.
std::string report_to_csv(const MetricsReport& report);

// The subset of a report that the CSV carries.
struct CsvReport {
  std::vector<StepAggregate> steps;
  MetricsSummary summary;

  bool operator==(const CsvReport&) const = default;
};

CsvReport import_report_csv(const std::string& text);

std::string report_to_json_text(const MetricsReport& report);
MetricsReport report_from_json_text(const std::string& text);

}  // namespace cyberops::harness
