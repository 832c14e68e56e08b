#include "cyberops/harness/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <nlohmann/json.hpp>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/text.hpp"
#include "cyberops/version.hpp"

namespace cyberops::harness {

using nlohmann::json;

const char* to_string(ExperimentGroup group) {
  switch (group) {
    case ExperimentGroup::Independent: return "independent";
    case ExperimentGroup::SingleMentor: return "single_mentor";
    case ExperimentGroup::MultiMentor: return "multi_mentor";
  }
  return "independent";
}

std::optional<ExperimentGroup> group_from_string(std::string_view s) {
  const std::string t = to_lower(s);
  if (t == "independent") return ExperimentGroup::Independent;
  if (t == "single_mentor") return ExperimentGroup::SingleMentor;
  if (t == "multi_mentor") return ExperimentGroup::MultiMentor;
  return std::nullopt;
}

namespace {

std::optional<double> mean_defined(const std::vector<Metrics>& per_run,
                                   std::optional<double> SegmentMetrics::*rate,
                                   SegmentMetrics Metrics::*segment) {
  std::vector<double> values;
  for (const auto& m : per_run)
    if (const auto v = (m.*segment).*rate) values.push_back(*v);
  if (values.empty()) return std::nullopt;
  return mean_of(values);
}

SummaryRates summarize_segment(const std::vector<Metrics>& per_run,
                               SegmentMetrics Metrics::*segment) {
  SummaryRates s;
  s.collaboration_rate = mean_defined(per_run, &SegmentMetrics::collaboration_rate, segment);
  s.dilemma_rate = mean_defined(per_run, &SegmentMetrics::dilemma_rate, segment);
  s.accept_rate = mean_defined(per_run, &SegmentMetrics::accept_rate, segment);
  s.dilemma_accept_rate =
      mean_defined(per_run, &SegmentMetrics::dilemma_accept_rate, segment);
  return s;
}

json rates_to_json(const SummaryRates& r) {
  const auto field = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  return json{{"collaboration_rate", field(r.collaboration_rate)},
              {"dilemma_rate", field(r.dilemma_rate)},
              {"accept_rate", field(r.accept_rate)},
              {"dilemma_accept_rate", field(r.dilemma_accept_rate)}};
}

SummaryRates rates_from_json(const json& j) {
  const auto field = [&](const char* name) -> std::optional<double> {
    const auto& v = j.at(name);
    if (v.is_null()) return std::nullopt;
    return v.get<double>();
  };
  SummaryRates r;
  r.collaboration_rate = field("collaboration_rate");
  r.dilemma_rate = field("dilemma_rate");
  r.accept_rate = field("accept_rate");
  r.dilemma_accept_rate = field("dilemma_accept_rate");
  return r;
}

json segment_to_json(const SegmentMetrics& m) {
  json j = rates_to_json({m.collaboration_rate, m.dilemma_rate, m.accept_rate,
                          m.dilemma_accept_rate});
  j["steps"] = m.steps;
  j["consulted"] = m.consulted;
  j["dilemma_consults"] = m.dilemma_consults;
  j["accepted"] = m.accepted;
  j["accepted_in_dilemma"] = m.accepted_in_dilemma;
  return j;
}

SegmentMetrics segment_from_json(const json& j) {
  SegmentMetrics m;
  m.steps = j.at("steps").get<int>();
  m.consulted = j.at("consulted").get<int>();
  m.dilemma_consults = j.at("dilemma_consults").get<int>();
  m.accepted = j.at("accepted").get<int>();
  m.accepted_in_dilemma = j.at("accepted_in_dilemma").get<int>();
  const SummaryRates r = rates_from_json(j);
  m.collaboration_rate = r.collaboration_rate;
  m.dilemma_rate = r.dilemma_rate;
  m.accept_rate = r.accept_rate;
  m.dilemma_accept_rate = r.dilemma_accept_rate;
  return m;
}

const char* const kRateNames[] = {"collaboration_rate", "dilemma_rate", "accept_rate",
                                  "dilemma_accept_rate"};

std::optional<double> SummaryRates::*rate_field(std::string_view name) {
  if (name == "collaboration_rate") return &SummaryRates::collaboration_rate;
  if (name == "dilemma_rate") return &SummaryRates::dilemma_rate;
  if (name == "accept_rate") return &SummaryRates::accept_rate;
  if (name == "dilemma_accept_rate") return &SummaryRates::dilemma_accept_rate;
  return nullptr;
}

}  // namespace

MetricsReport build_report(ExperimentGroup group, env::Team team,
                           const std::vector<std::uint64_t>& seeds,
                           const std::vector<EpisodeTrace>& traces, int episode_length,
                           int split_step, double smoothing, double confidence) {
  if (traces.empty()) throw ArtifactError("cannot build a report from zero completed runs");
  for (const auto& t : traces)
    if (static_cast<int>(t.steps.size()) != episode_length)
      throw ArtifactError("trace length does not match the configured episode length");

  MetricsReport report;
  report.version = kVersion;
  report.group = group;
  report.team = team;
  report.episode_length = episode_length;
  report.split_step = split_step;
  report.seeds = seeds;
  report.partial = traces.size() < seeds.size();

  // Per-run cumulative reward series.
  std::vector<std::vector<double>> cumulative(traces.size());
  for (std::size_t r = 0; r < traces.size(); ++r) {
    double acc = 0.0;
    cumulative[r].reserve(traces[r].steps.size());
    for (const auto& s : traces[r].steps) {
      acc += s.reward;
      cumulative[r].push_back(acc);
    }
  }

  std::vector<double> mean_step(static_cast<std::size_t>(episode_length));
  std::vector<double> mean_cumulative(static_cast<std::size_t>(episode_length));
  report.steps.resize(static_cast<std::size_t>(episode_length));
  for (int t = 0; t < episode_length; ++t) {
    std::vector<double> step_samples, cumulative_samples;
    step_samples.reserve(traces.size());
    cumulative_samples.reserve(traces.size());
    for (std::size_t r = 0; r < traces.size(); ++r) {
      step_samples.push_back(traces[r].steps[static_cast<std::size_t>(t)].reward);
      cumulative_samples.push_back(cumulative[r][static_cast<std::size_t>(t)]);
    }
    auto& agg = report.steps[static_cast<std::size_t>(t)];
    agg.step = t;
    agg.mean_step_reward = mean_of(step_samples);
    agg.step_ci = mean_confidence_interval(step_samples, confidence);
    agg.mean_cumulative_reward = mean_of(cumulative_samples);
    agg.cumulative_ci = mean_confidence_interval(cumulative_samples, confidence);
    mean_step[static_cast<std::size_t>(t)] = agg.mean_step_reward;
    mean_cumulative[static_cast<std::size_t>(t)] = agg.mean_cumulative_reward;
  }
  const auto smoothed_step = exponential_smoothing(mean_step, smoothing);
  const auto smoothed_cumulative = exponential_smoothing(mean_cumulative, smoothing);
  for (int t = 0; t < episode_length; ++t) {
    report.steps[static_cast<std::size_t>(t)].smoothed_step_reward =
        smoothed_step[static_cast<std::size_t>(t)];
    report.steps[static_cast<std::size_t>(t)].smoothed_cumulative_reward =
        smoothed_cumulative[static_cast<std::size_t>(t)];
  }

  for (const auto& t : traces) report.per_run.push_back(compute_metrics(t.steps, split_step));
  report.summary.early = summarize_segment(report.per_run, &Metrics::early);
  report.summary.later = summarize_segment(report.per_run, &Metrics::later);
  report.summary.overall = summarize_segment(report.per_run, &Metrics::overall);
  return report;
}

std::string report_to_csv(const MetricsReport& report) {
  std::string out = "# cyberops experiment report v1\n";
  out += "# group=";
  out += to_string(report.group);
  out += " team=";
  out += env::to_string(report.team);
  out += " runs=" + std::to_string(report.seeds.size());
  out += " seeds=";
  for (std::size_t i = 0; i < report.seeds.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(report.seeds[i]);
  }
  out += " split=" + std::to_string(report.split_step);
  out += std::string(" partial=") + (report.partial ? "true" : "false");
  out += " version=" + report.version + "\n";
  out +=
      "step,mean_step_reward,smoothed_step_reward,step_ci_low,step_ci_high,"
      "mean_cumulative_reward,smoothed_cumulative_reward,cumulative_ci_low,"
      "cumulative_ci_high\n";
  for (const auto& s : report.steps) {
    out += std::to_string(s.step);
    for (const double v :
         {s.mean_step_reward, s.smoothed_step_reward, s.step_ci.low, s.step_ci.high,
          s.mean_cumulative_reward, s.smoothed_cumulative_reward, s.cumulative_ci.low,
          s.cumulative_ci.high}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  out += "# summary\n";
  out += "metric,segment,value\n";
  const struct {
    const char* name;
    const SummaryRates* rates;
  } segments[] = {{"early", &report.summary.early},
                  {"later", &report.summary.later},
                  {"overall", &report.summary.overall}};
  for (const char* metric : kRateNames) {
    for (const auto& seg : segments) {
      const auto field = rate_field(metric);
      const auto& value = (*seg.rates).*field;
      if (!value) continue;
      out += metric;
      out += ',';
      out += seg.name;
      out += ',';
      out += format_double(*value);
      out += '\n';
    }
  }
  return out;
}

CsvReport import_report_csv(const std::string& text) {
  CsvReport out;
  bool in_summary = false;
  for (const auto& raw : split(text, '\n')) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line == "# summary") {
      in_summary = true;
      continue;
    }
    if (line[0] == '#' || line.rfind("step,", 0) == 0 || line.rfind("metric,", 0) == 0)
      continue;
    const auto cells = split(line, ',');
    if (!in_summary) {
      if (cells.size() != 9) throw ArtifactError("bad report row: " + line);
      StepAggregate s;
      s.step = std::atoi(cells[0].c_str());
      s.mean_step_reward = std::strtod(cells[1].c_str(), nullptr);
      s.smoothed_step_reward = std::strtod(cells[2].c_str(), nullptr);
      s.step_ci = {std::strtod(cells[3].c_str(), nullptr),
                   std::strtod(cells[4].c_str(), nullptr)};
      s.mean_cumulative_reward = std::strtod(cells[5].c_str(), nullptr);
      s.smoothed_cumulative_reward = std::strtod(cells[6].c_str(), nullptr);
      s.cumulative_ci = {std::strtod(cells[7].c_str(), nullptr),
                         std::strtod(cells[8].c_str(), nullptr)};
      out.steps.push_back(s);
    } else {
      if (cells.size() != 3) throw ArtifactError("bad summary row: " + line);
      const auto field = rate_field(cells[0]);
      if (field == nullptr) throw ArtifactError("unknown metric in summary: " + cells[0]);
      SummaryRates* rates = nullptr;
      if (cells[1] == "early") rates = &out.summary.early;
      else if (cells[1] == "later") rates = &out.summary.later;
      else if (cells[1] == "overall") rates = &out.summary.overall;
      else throw ArtifactError("unknown segment in summary: " + cells[1]);
      (*rates).*field = std::strtod(cells[2].c_str(), nullptr);
    }
  }
  return out;
}

std::string report_to_json_text(const MetricsReport& report) {
  json steps = json::array();
  for (const auto& s : report.steps) {
    steps.push_back({{"step", s.step},
                     {"mean_step_reward", s.mean_step_reward},
                     {"smoothed_step_reward", s.smoothed_step_reward},
                     {"step_ci_low", s.step_ci.low},
                     {"step_ci_high", s.step_ci.high},
                     {"mean_cumulative_reward", s.mean_cumulative_reward},
                     {"smoothed_cumulative_reward", s.smoothed_cumulative_reward},
                     {"cumulative_ci_low", s.cumulative_ci.low},
                     {"cumulative_ci_high", s.cumulative_ci.high}});
  }
  json per_run = json::array();
  for (const auto& m : report.per_run) {
    per_run.push_back({{"split_step", m.split_step},
                       {"early", segment_to_json(m.early)},
                       {"later", segment_to_json(m.later)},
                       {"overall", segment_to_json(m.overall)}});
  }
  const json j = {{"schema_version", report.schema_version},
                  {"version", report.version},
                  {"group", to_string(report.group)},
                  {"team", env::to_string(report.team)},
                  {"episode_length", report.episode_length},
                  {"split_step", report.split_step},
                  {"seeds", report.seeds},
                  {"partial", report.partial},
                  {"steps", steps},
                  {"per_run", per_run},
                  {"summary",
                   {{"early", rates_to_json(report.summary.early)},
                    {"later", rates_to_json(report.summary.later)},
                    {"overall", rates_to_json(report.summary.overall)}}}};
  return j.dump(2) + "\n";
}

MetricsReport report_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& err) {
    throw ArtifactError(std::string("bad report json: ") + err.what());
  }
  try {
    MetricsReport r;
    r.schema_version = j.at("schema_version").get<int>();
    r.version = j.at("version").get<std::string>();
    const auto group = group_from_string(j.at("group").get<std::string>());
    const auto team = env::team_from_string(j.at("team").get<std::string>());
    if (!group || !team) throw ArtifactError("bad group or team in report json");
    r.group = *group;
    r.team = *team;
    r.episode_length = j.at("episode_length").get<int>();
    r.split_step = j.at("split_step").get<int>();
    r.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
    r.partial = j.at("partial").get<bool>();
    for (const auto& s : j.at("steps")) {
      StepAggregate a;
      a.step = s.at("step").get<int>();
      a.mean_step_reward = s.at("mean_step_reward").get<double>();
      a.smoothed_step_reward = s.at("smoothed_step_reward").get<double>();
      a.step_ci = {s.at("step_ci_low").get<double>(), s.at("step_ci_high").get<double>()};
      a.mean_cumulative_reward = s.at("mean_cumulative_reward").get<double>();
      a.smoothed_cumulative_reward = s.at("smoothed_cumulative_reward").get<double>();
      a.cumulative_ci = {s.at("cumulative_ci_low").get<double>(),
                         s.at("cumulative_ci_high").get<double>()};
      r.steps.push_back(a);
    }
    for (const auto& m : j.at("per_run")) {
      Metrics metrics;
      metrics.split_step = m.at("split_step").get<int>();
      metrics.early = segment_from_json(m.at("early"));
      metrics.later = segment_from_json(m.at("later"));
      metrics.overall = segment_from_json(m.at("overall"));
      r.per_run.push_back(metrics);
    }
    r.summary.early = rates_from_json(j.at("summary").at("early"));
    r.summary.later = rates_from_json(j.at("summary").at("later"));
    r.summary.overall = rates_from_json(j.at("summary").at("overall"));
    return r;
  } catch (const json::exception& err) {
    throw ArtifactError(std::string("bad report field: ") + err.what());
  }
}

}  // namespace cyberops::harness
