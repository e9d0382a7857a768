#include "dpm/engine.hpp"

#include <stdexcept>
#include <string>

namespace dpm {

std::string_view to_string(Resource resource) {
    switch (resource) {
        case Resource::cpu: return "cpu";
        case Resource::memory: return "memory";
        case Resource::network: return "network";
    }
    return "?";
}

Resource parse_resource(std::string_view text) {
    if (text == "cpu") return Resource::cpu;
    if (text == "memory") return Resource::memory;
    if (text == "network") return Resource::network;
    throw ConfigError("unknown resource '" + std::string(text) + "'");
}

HiiKind instruction_kind(Resource resource) {
    switch (resource) {
        case Resource::cpu: return HiiKind::compute;
        case Resource::memory: return HiiKind::store;
        case Resource::network: return HiiKind::send;
    }
    return HiiKind::compute;
}

double processing_time(const DistributedTrace& trace) {
    double t = 0.0;
    for (const auto& step : trace.steps) t += step.cost.time;
    return t;
}

double processing_time(std::span<const DistributedTrace> traces) {
    double t = 0.0;
    for (const auto& trace : traces) t += processing_time(trace);
    return t;
}

std::vector<double> utilization(std::span<const DistributedTrace> traces, const NodeId& node, Resource resource,
                                double delta_t) {
    if (!(delta_t > 0.0)) throw ConfigError("delta_t must be positive");
    const HiiKind kind = instruction_kind(resource);
    std::vector<double> out;
    out.reserve(traces.size());
    double cumulative = 0.0;
    for (const auto& trace : traces) {
        double sum = 0.0;
        for (const auto& step : trace.steps) {
            if (step.node_id == node && step.kind == kind) sum += step.cost.util;
        }
        if (resource == Resource::memory) {
            cumulative += sum;
            out.push_back(cumulative);
        } else {
            out.push_back(sum / delta_t);
        }
    }
    return out;
}

Simulation::Simulation(const Topology& topology, const PayloadTable& payloads)
    : topology_(topology), payloads_(payloads) {}

void Simulation::begin(Trigger trigger) {
    if (current_) throw std::logic_error("a trace is already being recorded");
    current_ = DistributedTrace{std::move(trigger), {}};
}

DistributedTrace Simulation::finish() {
    DistributedTrace out = std::move(current());
    current_.reset();
    return out;
}

DistributedTrace& Simulation::current() {
    if (!current_) throw std::logic_error("no trace is being recorded");
    return *current_;
}

const TraceStep& Simulation::dispatch(const NodeId& node, HiiKind kind, std::string_view tag,
                                      const std::optional<NodeId>& target, std::size_t arg_count) {
    const std::size_t slot = reserve(node, kind, tag, target);
    complete(slot, arg_count);
    return current().steps[slot];
}

std::size_t Simulation::reserve(const NodeId& node, HiiKind kind, std::string_view tag,
                                const std::optional<NodeId>& target) {
    auto& trace = current();
    if (!payloads_.contains(tag)) throw ConfigError("no payload rule for method tag '" + std::string(tag) + "'");
    if (kind != HiiKind::send && target) throw ConfigError("only send steps carry a target");
    // Resolve now so an unreachable peer fails before the handler runs.
    topology_.node(node).instruction(kind, target);
    trace.steps.push_back({node, kind, target, std::string(tag), {}, {}});
    return trace.steps.size() - 1;
}

void Simulation::complete(std::size_t slot, std::size_t arg_count) {
    TraceStep& step = current().steps.at(slot);
    const Hii& hii = topology_.node(step.node_id).instruction(step.kind, step.target);
    step.payload = payloads_.payload(step.method_tag, arg_count);
    step.cost = apply_hii(hii, step.payload.p, step.payload.q);
}

RunResult run(Algorithm& algorithm, const Topology& topology, const PayloadTable& payloads,
              const DistributedEventStream& stream, std::size_t request_cadence) {
    if (request_cadence == 0) throw ConfigError("request cadence must be at least 1");
    if (algorithm.topology_kind() != topology.kind()) {
        throw TopologyError(std::string(algorithm.name()) + " runs on a " +
                            std::string(to_string(algorithm.topology_kind())) + " topology, got " +
                            std::string(to_string(topology.kind())));
    }
    for (auto tag : algorithm.method_tags()) {
        if (!payloads.contains(tag)) throw ConfigError("payload table has no rule for '" + std::string(tag) + "'");
    }

    const auto events = stream.merged();
    for (const auto& e : events) {
        if (!topology.contains(e.location) || topology.node(e.location).node_class != NodeClass::edge) {
            throw WorkloadMismatch("event at " + e.location + " which is not an edge node of the topology");
        }
    }

    algorithm.attach(topology);
    Simulation sim(topology, payloads);
    RunResult result;
    result.traces.reserve(events.size() + events.size() / request_cadence);

    std::size_t requests = 0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        sim.begin(events[i]);
        algorithm.on_event(sim, events[i]);
        result.traces.push_back(sim.finish());

        if ((i + 1) % request_cadence == 0) {
            ModelRequest request{requests++, {}};
            request.target = algorithm.request_target(request.index);
            sim.begin(request);
            auto dfg = algorithm.on_model_request(sim, request.target);
            result.traces.push_back(sim.finish());
            result.models.push_back({result.traces.size() - 1, i + 1, request.target, std::move(dfg)});
        }
    }
    return result;
}

}  // namespace dpm
