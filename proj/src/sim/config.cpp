// SPDX-License-Identifier: Apache-2.0
#include "vaba/sim/config.hpp"

#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "vaba/validators.hpp"

namespace vaba::sim {

AdversaryKind adversary_kind_from_string(const std::string& name) {
  if (name == "fair") return AdversaryKind::FairRandom;
  if (name == "crash") return AdversaryKind::CrashF;
  if (name == "equivocate") return AdversaryKind::EquivocateSenders;
  if (name == "delay-leader") return AdversaryKind::DelayLeader;
  if (name == "adaptive") return AdversaryKind::AdaptiveCorruptLeader;
  throw std::invalid_argument("unknown adversary: " + name);
}

const char* adversary_kind_name(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::FairRandom: return "fair";
    case AdversaryKind::CrashF: return "crash";
    case AdversaryKind::EquivocateSenders: return "equivocate";
    case AdversaryKind::DelayLeader: return "delay-leader";
    case AdversaryKind::AdaptiveCorruptLeader: return "adaptive";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (n < 1) throw std::invalid_argument("config: n must be positive");
  if (n < 3 * f + 1) throw std::invalid_argument("config: n must be at least 3f+1");
  if (runs < 1) throw std::invalid_argument("config: runs must be positive");
  if (!is_known_validator(validator))
    throw std::invalid_argument("config: unknown validator " + validator);
  if (halt.event_budget == 0) throw std::invalid_argument("config: event budget must be positive");
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["f"] = f;
  j["adversary"] = adversary_kind_name(adversary);
  j["validator"] = validator;
  j["seed"] = seed;
  j["runs"] = runs;
  j["event_budget"] = halt.event_budget;
  j["aging_bound"] = halt.aging_bound;
  if (!trace_path.empty()) j["trace"] = trace_path;
  if (!out_path.empty()) j["out"] = out_path;
  return j.dump(2);
}

namespace {

ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  cfg.n = j.at("n").get<std::uint32_t>();
  cfg.f = j.at("f").get<std::uint32_t>();
  if (j.contains("adversary"))
    cfg.adversary = adversary_kind_from_string(j.at("adversary").get<std::string>());
  if (j.contains("validator")) cfg.validator = j.at("validator").get<std::string>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("runs")) cfg.runs = j.at("runs").get<std::uint32_t>();
  if (j.contains("event_budget")) cfg.halt.event_budget = j.at("event_budget").get<std::uint64_t>();
  if (j.contains("aging_bound")) cfg.halt.aging_bound = j.at("aging_bound").get<std::uint64_t>();
  if (j.contains("trace")) cfg.trace_path = j.at("trace").get<std::string>();
  if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
  cfg.validate();
  return cfg;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_value(const std::string& text) {
  return config_from_json(nlohmann::json::parse(text));
}

std::vector<ExperimentConfig> parse_sweep_file(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_array()) throw std::invalid_argument("sweep file must be a JSON array of configs");
  std::vector<ExperimentConfig> out;
  for (const auto& j : doc) out.push_back(config_from_json(j));
  if (out.empty()) throw std::invalid_argument("sweep file has no configs");
  return out;
}

}  // namespace vaba::sim
