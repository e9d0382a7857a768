#include "dpm/scenario.hpp"

namespace dpm {

void validate_scenario(const ScenarioConfig& config) {
    const auto algo = make_algorithm(config.algorithm);
    if (algo->topology_kind() != config.topology.kind) {
        throw ConfigError(std::string(to_string(config.algorithm)) + " needs a " +
                          std::string(to_string(algo->topology_kind())) + " topology, not " +
                          std::string(to_string(config.topology.kind)));
    }
    for (auto tag : algo->method_tags()) {
        if (!config.payloads.contains(tag)) throw ConfigError("payload table has no rule for '" + std::string(tag) + "'");
    }
    if (config.run.request_cadence == 0) throw ConfigError("request cadence must be at least 1");
    if (!(config.run.delta_t > 0.0)) throw ConfigError("delta_t must be positive");
    if (config.workload.model.has_value() == !config.workload.events.empty()) {
        throw ConfigError("workload needs exactly one of a process model or a fixed event list");
    }
    if (config.workload.model) {
        if (config.run.n_events == 0) throw ConfigError("n_events must be at least 1");
        validate_model(*config.workload.model);
    }
    validate_slo(config.slo);
    build_topology(config.topology);
}

DistributedEventStream make_stream(const ScenarioConfig& config) {
    if (config.workload.model) return generate(*config.workload.model, config.run.n_events, config.run.seed);
    return DistributedEventStream::from_events(config.workload.events);
}

bool same_workload(const ScenarioConfig& a, const ScenarioConfig& b) {
    if (a.workload != b.workload) return false;
    if (!a.workload.model) return true;
    return a.run.n_events == b.run.n_events && a.run.seed == b.run.seed;
}

SimulationOutcome simulate(const ScenarioConfig& config, const DistributedEventStream& stream) {
    validate_scenario(config);
    Topology topology = build_topology(config.topology);
    auto algo = make_algorithm(config.algorithm);
    RunResult result = run(*algo, topology, config.payloads, stream, config.run.request_cadence);
    MetricsSeries metrics = compute_metrics(result.traces, topology, config.run.delta_t);
    return {std::move(topology), std::move(result), std::move(metrics)};
}

}  // namespace dpm
