#include "cyberops/harness/trace.hpp"

#include <nlohmann/json.hpp>

#include "cyberops/common/errors.hpp"
#include "cyberops/common/text.hpp"

namespace cyberops::harness {

using nlohmann::json;

namespace {

json step_to_json(const StepRecord& s) {
  json suggestions = json::array();
  for (const auto& sg : s.suggestions)
    suggestions.push_back(
        {{"mentor", sg.mentor_id}, {"action", sg.action}, {"confidence", sg.confidence}});
  return json{{"type", "step"},
              {"step", s.step},
              {"observation", s.observation},
              {"action", s.action},
              {"success", s.success},
              {"reward", s.reward},
              {"consulted", s.consulted},
              {"dilemma", s.dilemma},
              {"accepted", s.accepted},
              {"fallback_level", s.fallback_level},
              {"independence", s.independence},
              {"schedule_part", s.schedule_part},
              {"experience_part", s.experience_part},
              {"excluded", s.excluded},
              {"suggestions", suggestions},
              {"prompt", s.prompt},
              {"reply", s.reply}};
}

StepRecord step_from_json(const json& j) {
  StepRecord s;
  s.step = j.at("step").get<int>();
  s.observation = j.at("observation").get<std::vector<double>>();
  s.action = j.at("action").get<std::string>();
  s.success = j.at("success").get<bool>();
  s.reward = j.at("reward").get<double>();
  s.consulted = j.at("consulted").get<bool>();
  s.dilemma = j.at("dilemma").get<bool>();
  s.accepted = j.at("accepted").get<bool>();
  s.fallback_level = j.at("fallback_level").get<int>();
  s.independence = j.at("independence").get<double>();
  s.schedule_part = j.at("schedule_part").get<double>();
  s.experience_part = j.at("experience_part").get<double>();
  s.excluded = j.at("excluded").get<std::vector<std::string>>();
  for (const auto& sg : j.at("suggestions")) {
    s.suggestions.push_back({sg.at("mentor").get<std::string>(),
                             sg.at("action").get<std::string>(),
                             sg.at("confidence").get<double>()});
  }
  s.prompt = j.at("prompt").get<std::string>();
  s.reply = j.at("reply").get<std::string>();
  return s;
}

}  // namespace

void write_trace(const std::string& path, const EpisodeTrace& trace) {
  std::string out;
  const json meta = {{"type", "meta"},
                     {"schema_version", 1},
                     {"seed", trace.seed},
                     {"team", env::to_string(trace.team)},
                     {"steps", trace.steps.size()},
                     {"cumulative_reward", trace.cumulative_reward}};
  out += meta.dump();
  out += '\n';
  for (const auto& s : trace.steps) {
    out += step_to_json(s).dump();
    out += '\n';
  }
  write_text_file(path, out);
}

EpisodeTrace read_trace(const std::string& path) {
  const std::string text = read_text_file(path);
  EpisodeTrace trace;
  bool meta_seen = false;
  for (const auto& raw : split(text, '\n')) {
    const std::string line = trim(raw);
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& err) {
      throw ArtifactError("bad trace line in " + path + ": " + err.what());
    }
    try {
      const std::string type = j.at("type").get<std::string>();
      if (type == "meta") {
        trace.seed = j.at("seed").get<std::uint64_t>();
        const auto team = env::team_from_string(j.at("team").get<std::string>());
        if (!team) throw ArtifactError("bad team in trace meta: " + path);
        trace.team = *team;
        trace.cumulative_reward = j.at("cumulative_reward").get<double>();
        meta_seen = true;
      } else if (type == "step") {
        trace.steps.push_back(step_from_json(j));
      }
    } catch (const json::exception& err) {
      throw ArtifactError("bad trace field in " + path + ": " + err.what());
    }
  }
  if (!meta_seen) throw ArtifactError("trace has no meta line: " + path);
  return trace;
}

}  // namespace cyberops::harness
