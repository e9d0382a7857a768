#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dpm/cost_model.hpp"
#include "dpm/dfg.hpp"
#include "dpm/topology.hpp"
#include "dpm/types.hpp"

namespace dpm {

struct ModelRequest {
    /// 0-based count of requests issued before this one.
    std::size_t index = 0;
    NodeId target;

    friend bool operator==(const ModelRequest&, const ModelRequest&) = default;
};

using Trigger = std::variant<Event, ModelRequest>;

/// One resolved hardware interaction.
struct TraceStep {
    NodeId node_id;
    HiiKind kind = HiiKind::compute;
    std::optional<NodeId> target;
    std::string method_tag;
    Payload payload;
    CostVector cost;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

/// Every step a single trigger caused, in causal order.
struct DistributedTrace {
    Trigger trigger;
    std::vector<TraceStep> steps;

    bool is_request() const { return std::holds_alternative<ModelRequest>(trigger); }

    friend bool operator==(const DistributedTrace&, const DistributedTrace&) = default;
};

enum class Resource { cpu, memory, network };

std::string_view to_string(Resource resource);
Resource parse_resource(std::string_view text);
/// cpu <- compute, memory <- store, network <- send.
HiiKind instruction_kind(Resource resource);

/// Sum of step times.
double processing_time(const DistributedTrace& trace);
double processing_time(std::span<const DistributedTrace> traces);

/// Per-trigger utilization of one resource at one node. cpu and network sum
/// the node's step utilizations and divide by `delta_t`; memory is the
/// cumulative sum over all triggers so far and ignores `delta_t`.
std::vector<double> utilization(std::span<const DistributedTrace> traces, const NodeId& node, Resource resource,
                                double delta_t);

/// Records hardware interactions into the trace of the current trigger.
///
/// Algorithms touch node state only from inside the effect callbacks of
/// store(), compute() and send(), so every side effect is paired with the
/// step that pays for it.
class Simulation {
public:
    Simulation(const Topology& topology, const PayloadTable& payloads);

    const Topology& topology() const { return topology_; }
    const PayloadTable& payloads() const { return payloads_; }

    void begin(Trigger trigger);
    DistributedTrace finish();
    bool active() const { return current_.has_value(); }

    /// Resolves payload and cost for one step and appends it. Throws
    /// ConfigError for unknown tags and UnreachablePeer for a send without
    /// an instruction for `target`.
    const TraceStep& dispatch(const NodeId& node, HiiKind kind, std::string_view tag,
                              const std::optional<NodeId>& target, std::size_t arg_count);

    template <class Effect>
    decltype(auto) store(const NodeId& node, std::string_view tag, std::size_t arg_count, Effect&& effect) {
        dispatch(node, HiiKind::store, tag, std::nullopt, arg_count);
        return effect();
    }

    template <class Fn>
    decltype(auto) compute(const NodeId& node, std::string_view tag, std::size_t arg_count, Fn&& fn) {
        dispatch(node, HiiKind::compute, tag, std::nullopt, arg_count);
        return fn();
    }

    /// Synchronous request: the sender pays one send (which also covers the
    /// reply) and the peer's handler runs before the sender continues.
    template <class Handler>
    decltype(auto) send(const NodeId& from, const NodeId& to, std::string_view tag, std::size_t arg_count,
                        Handler&& handler) {
        dispatch(from, HiiKind::send, tag, to, arg_count);
        return handler();
    }

    /// Like send(), but the payload is sized by the reply (e.g. a partial
    /// model being transferred). The send step still precedes the handler's
    /// steps in the trace.
    template <class Handler, class Sizer>
    auto fetch(const NodeId& from, const NodeId& to, std::string_view tag, Handler&& handler, Sizer&& size_of) {
        const std::size_t slot = reserve(from, HiiKind::send, tag, to);
        auto reply = handler();
        complete(slot, size_of(reply));
        return reply;
    }

private:
    std::size_t reserve(const NodeId& node, HiiKind kind, std::string_view tag, const std::optional<NodeId>& target);
    void complete(std::size_t slot, std::size_t arg_count);
    DistributedTrace& current();

    const Topology& topology_;
    const PayloadTable& payloads_;
    std::optional<DistributedTrace> current_;
};

/// Discovery algorithm driven by the engine. Implementations keep per-node
/// state and reach it only through the Simulation's instructions.
class Algorithm {
public:
    virtual ~Algorithm() = default;

    virtual std::string_view name() const = 0;
    virtual TopologyKind topology_kind() const = 0;
    /// Every tag the algorithm may dispatch; checked against the payload table.
    virtual std::vector<std::string_view> method_tags() const = 0;

    /// Drops all state and binds to a topology of the matching kind.
    virtual void attach(const Topology& topology) = 0;
    virtual void on_event(Simulation& sim, const Event& event) = 0;
    virtual NodeId request_target(std::size_t request_index) const = 0;
    virtual DirectlyFollowsGraph on_model_request(Simulation& sim, const NodeId& target) = 0;
};

struct RequestedModel {
    /// Position of the request trace in RunResult::traces.
    std::size_t trace_index = 0;
    /// Number of events delivered before the request.
    std::size_t events_seen = 0;
    NodeId target;
    DirectlyFollowsGraph dfg;
};

struct RunResult {
    std::vector<DistributedTrace> traces;
    std::vector<RequestedModel> models;
};

/// Delivers events in global timestamp order, one trace each, and inserts a
/// model request trace after every `request_cadence` events.
RunResult run(Algorithm& algorithm, const Topology& topology, const PayloadTable& payloads,
              const DistributedEventStream& stream, std::size_t request_cadence);

}  // namespace dpm
