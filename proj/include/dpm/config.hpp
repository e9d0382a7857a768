#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "dpm/scenario.hpp"

namespace dpm {

/// Scenario documents are JSON objects with the keys `name`, `topology`,
/// `payloads`, `workload`, `algorithm`, `run` and `slo`. See README.md for
/// the schema. Emitting and re-reading a scenario is lossless.
nlohmann::json scenario_to_json(const ScenarioConfig& config);

/// Throws ConfigError on malformed documents. Missing `payloads`, `run` and
/// `slo` fall back to the defaults.
ScenarioConfig scenario_from_json(const nlohmann::json& doc);

std::string emit_scenario(const ScenarioConfig& config);
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

}  // namespace dpm
