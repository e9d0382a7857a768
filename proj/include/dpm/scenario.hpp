#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dpm/algorithms.hpp"
#include "dpm/cost_model.hpp"
#include "dpm/engine.hpp"
#include "dpm/metrics.hpp"
#include "dpm/topology.hpp"
#include "dpm/workload.hpp"

namespace dpm {

struct RunSettings {
    std::size_t request_cadence = 10;
    double delta_t = 1.0;
    std::uint64_t n_events = 1000;
    std::uint64_t seed = 42;

    friend bool operator==(const RunSettings&, const RunSettings&) = default;
};

/// Either a generative model or a fixed, already-timestamped event list.
struct WorkloadSource {
    std::optional<ProcessModelSpec> model;
    std::vector<Event> events;

    friend bool operator==(const WorkloadSource&, const WorkloadSource&) = default;
};

/// Everything needed to reproduce one simulation.
struct ScenarioConfig {
    std::string name;
    TopologyBlueprint topology;
    PayloadTable payloads;
    WorkloadSource workload;
    AlgorithmName algorithm = AlgorithmName::dfg_edge;
    RunSettings run;
    ServiceLevelObjective slo;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws ConfigError (or the module-specific error) when the scenario
/// cannot be simulated as configured.
void validate_scenario(const ScenarioConfig& config);

DistributedEventStream make_stream(const ScenarioConfig& config);

/// True when both scenarios produce the identical event stream.
bool same_workload(const ScenarioConfig& a, const ScenarioConfig& b);

struct SimulationOutcome {
    Topology topology;
    RunResult result;
    MetricsSeries metrics;
};

SimulationOutcome simulate(const ScenarioConfig& config, const DistributedEventStream& stream);

}  // namespace dpm
