#include "cyberops/harness/metrics.hpp"

#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <numeric>

#include "cyberops/common/errors.hpp"

namespace cyberops::harness {
namespace {

void finish_segment(SegmentMetrics& m) {
  if (m.steps > 0) m.collaboration_rate = static_cast<double>(m.consulted) / m.steps;
  if (m.consulted > 0) {
    m.dilemma_rate = static_cast<double>(m.dilemma_consults) / m.consulted;
    m.accept_rate = static_cast<double>(m.accepted) / m.consulted;
  }
  if (m.dilemma_consults > 0)
    m.dilemma_accept_rate = static_cast<double>(m.accepted_in_dilemma) / m.dilemma_consults;
}

void count_step(SegmentMetrics& m, const StepRecord& s) {
  m.steps += 1;
  if (s.consulted) {
    m.consulted += 1;
    if (s.dilemma) m.dilemma_consults += 1;
    if (s.accepted) {
      m.accepted += 1;
      if (s.dilemma) m.accepted_in_dilemma += 1;
    }
  }
}

}  // namespace

Metrics compute_metrics(const std::vector<StepRecord>& steps, int split_step) {
  Metrics m;
  m.split_step = split_step;
  for (const auto& s : steps) {
    count_step(m.overall, s);
    count_step(s.step < split_step ? m.early : m.later, s);
  }
  finish_segment(m.early);
  finish_segment(m.later);
  finish_segment(m.overall);
  return m;
}

std::optional<std::string> check_flag_invariants(const std::vector<StepRecord>& steps,
                                                 bool mentored) {
  for (const auto& s : steps) {
    if (s.accepted && !s.consulted)
      return "step " + std::to_string(s.step) + ": accepted without consulting";
    if (mentored && s.dilemma && !s.consulted)
      return "step " + std::to_string(s.step) + ": dilemma without consulting";
    if (!mentored && s.consulted)
      return "step " + std::to_string(s.step) + ": consulted without mentors";
  }
  return std::nullopt;
}

std::vector<double> exponential_smoothing(const std::vector<double>& values, double factor) {
  if (!(factor >= 0.0 && factor < 1.0))
    throw ConfigError("smoothing factor must be in [0, 1)");
  std::vector<double> out;
  out.reserve(values.size());
  double s = 0.0;
  for (const double x : values) {
    s = factor * s + (1.0 - factor) * x;
    out.push_back(s);
  }
  return out;
}

double mean_of(const std::vector<double>& samples) {
  if (samples.empty()) throw ConfigError("mean of empty sample");
  return std::accumulate(samples.begin(), samples.end(), 0.0) /
         static_cast<double>(samples.size());
}

ConfidenceInterval mean_confidence_interval(const std::vector<double>& samples,
                                            double confidence) {
  if (samples.empty()) throw ConfigError("confidence interval of empty sample");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw ConfigError("confidence level must be in (0, 1)");
  const double mean = mean_of(samples);
  if (samples.size() == 1) return {mean, mean};

  double ss = 0.0;
  for (const double x : samples) ss += (x - mean) * (x - mean);
  const auto n = static_cast<double>(samples.size());
  const double sd = std::sqrt(ss / (n - 1.0));
  if (sd == 0.0) return {mean, mean};

  const boost::math::students_t dist(n - 1.0);
  const double t = boost::math::quantile(dist, 0.5 + confidence / 2.0);
  const double half = t * sd / std::sqrt(n);
  return {mean - half, mean + half};
}

}  // namespace cyberops::harness
