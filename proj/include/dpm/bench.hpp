#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dpm/algorithms.hpp"
#include "dpm/scenario.hpp"

namespace dpm {

/// Three identical edge nodes, the baseline payload table and two events of
/// one case: (c0, a0) at n1, then (c0, a1) at n0. The model is requested
/// after the second event.
ScenarioConfig worked_example_preset();
std::vector<Event> worked_example_events();

/// Seven edge nodes, one per factory station, running `algorithm` on its
/// topology: fog nodes 1.5x and the cloud 2x an edge node's capability;
/// edge-fog and fog-fog links 1.5x and edge-cloud links 5x the edge-edge
/// send time. Two fog subnets of four and three stations. The model is
/// requested every ten events under a 95% network objective.
ScenarioConfig factory_preset(AlgorithmName algorithm);
TopologyBlueprint factory_topology(TopologyKind kind);

std::vector<std::string> preset_names();
/// Throws ConfigError for unknown names.
ScenarioConfig preset_by_name(std::string_view name);

}  // namespace dpm
