#include <doctest.h>

#include "dpm/algorithms.hpp"
#include "dpm/bench.hpp"
#include "dpm/engine.hpp"

using namespace dpm;

namespace {

Topology three_edges() {
    TopologyBlueprint bp;
    bp.edge_nodes = {"n0", "n1", "n2"};
    return build_topology(bp);
}

TraceStep step_with_time(double t) {
    TraceStep s;
    s.cost.time = t;
    return s;
}

struct Expected {
    NodeId node;
    HiiKind kind;
    std::optional<NodeId> target;
    std::string tag;
    double time;
};

}  // namespace

TEST_CASE("dispatch resolves payload and cost") {
    const auto topo = three_edges();
    const auto table = default_payload_table();
    Simulation sim(topo, table);
    sim.begin(Event{"c0", "a1", 2, "n0"});

    auto log = sim.dispatch("n0", HiiKind::store, tags::event_log, std::nullopt, 4);
    CHECK(log.payload == Payload{1, 1});
    CHECK(log.cost.time == 3.0);
    CHECK(log.cost.util == doctest::Approx(0.01));

    auto latest = sim.dispatch("n0", HiiKind::compute, tags::latest_timestamp, std::nullopt, 0);
    CHECK(latest.payload == Payload{0, 0});
    CHECK(latest.cost == CostVector{0, 0});

    auto follows = sim.dispatch("n0", HiiKind::store, tags::follows_relation, std::nullopt, 2);
    CHECK(follows.payload == Payload{1, 2});
    CHECK(follows.cost.time == 3.0);
    CHECK(follows.cost.util == doctest::Approx(0.02));

    CHECK_THROWS_AS(sim.dispatch("n0", HiiKind::store, "unknownTag", std::nullopt, 0), ConfigError);
    CHECK_THROWS_AS(sim.dispatch("n0", HiiKind::send, tags::request_last_event, NodeId("n7"), 1), UnreachablePeer);
    CHECK(sim.finish().steps.size() == 3);
}

TEST_CASE("processing time sums step times") {
    CHECK(processing_time(DistributedTrace{}) == 0.0);

    DistributedTrace printed;
    for (double t : {3, 10, 3, 10, 2, 3}) printed.steps.push_back(step_with_time(t));
    CHECK(processing_time(printed) == 31.0);

    DistributedTrace full;
    for (double t : {3, 10, 3, 10, 3, 2, 3}) full.steps.push_back(step_with_time(t));
    CHECK(processing_time(full) == 34.0);

    std::vector<DistributedTrace> both{printed, full};
    CHECK(processing_time(std::span<const DistributedTrace>(both)) == 65.0);
}

TEST_CASE("worked example replays the seven-step trace") {
    const auto preset = worked_example_preset();
    const auto topo = build_topology(preset.topology);
    auto alg = make_algorithm(AlgorithmName::dfg_edge);
    auto stream = DistributedEventStream::from_events(worked_example_events());
    auto result = run(*alg, topo, preset.payloads, stream, preset.run.request_cadence);

    REQUIRE(result.traces.size() == 3);
    const auto& trace = result.traces[1];
    const std::vector<Expected> expected{
        {"n0", HiiKind::store, {}, "eventLog", 3},
        {"n0", HiiKind::send, "n1", "requestLastEventWithCaseId", 10},
        {"n1", HiiKind::store, {}, "getLatestEventWithCaseId", 3},
        {"n0", HiiKind::send, "n2", "requestLastEventWithCaseId", 10},
        {"n2", HiiKind::store, {}, "getLatestEventWithCaseId", 3},
        {"n0", HiiKind::compute, {}, "latestTimestamp", 2},
        {"n0", HiiKind::store, {}, "followsRelation", 3},
    };
    REQUIRE(trace.steps.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        INFO("step " << i);
        CHECK(trace.steps[i].node_id == expected[i].node);
        CHECK(trace.steps[i].kind == expected[i].kind);
        CHECK(trace.steps[i].target == expected[i].target);
        CHECK(trace.steps[i].method_tag == expected[i].tag);
        CHECK(trace.steps[i].cost.time == expected[i].time);
    }
    CHECK(processing_time(trace) == 34.0);

    const auto net = utilization(result.traces, "n0", Resource::network, 1.0);
    CHECK(net[1] == doctest::Approx(0.10));
    CHECK(net[0] == 0.0);
    const auto cpu = utilization(result.traces, "n2", Resource::cpu, 1.0);
    CHECK(cpu == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(result.models.at(0).dfg.count("a0", "a1") == 1);
}

TEST_CASE("utilization scales with delta_t except memory") {
    const auto preset = worked_example_preset();
    const auto topo = build_topology(preset.topology);
    auto alg = make_algorithm(AlgorithmName::dfg_edge);
    auto stream = DistributedEventStream::from_events(worked_example_events());
    auto result = run(*alg, topo, preset.payloads, stream, 2);

    const auto net1 = utilization(result.traces, "n0", Resource::network, 1.0);
    const auto net_half = utilization(result.traces, "n0", Resource::network, 0.5);
    for (std::size_t i = 0; i < net1.size(); ++i) CHECK(net_half[i] == doctest::Approx(2 * net1[i]));

    const auto mem1 = utilization(result.traces, "n0", Resource::memory, 1.0);
    const auto mem_half = utilization(result.traces, "n0", Resource::memory, 0.5);
    CHECK(mem1 == mem_half);
    // eventLog (0.01) and followsRelation (0.02) at trigger 2 accumulate
    CHECK(mem1[0] == 0.0);
    CHECK(mem1[1] == doctest::Approx(0.03));
    CHECK(mem1[2] == doctest::Approx(0.03));
}

TEST_CASE("run inserts one request trace per cadence") {
    std::vector<Event> events;
    for (Timestamp t = 1; t <= 10; ++t) events.push_back({"c" + std::to_string(t % 3), "a", t, "n" + std::to_string(t % 3)});
    const auto topo = three_edges();
    auto alg = make_algorithm(AlgorithmName::dfg_edge);
    auto result = run(*alg, topo, default_payload_table(), DistributedEventStream::from_events(events), 10);
    CHECK(result.traces.size() == 11);
    CHECK(result.traces.back().is_request());
    CHECK(result.models.size() == 1);
    CHECK(result.models[0].trace_index == 10);
    CHECK(result.models[0].events_seen == 10);

    auto r3 = run(*alg, topo, default_payload_table(), DistributedEventStream::from_events(events), 3);
    CHECK(r3.traces.size() == 13);
    CHECK(r3.models.size() == 3);
}

TEST_CASE("run rejects events at unknown locations and mismatched topologies") {
    const auto topo = three_edges();
    auto alg = make_algorithm(AlgorithmName::dfg_edge);
    auto stream = DistributedEventStream::from_events({{"c0", "a", 1, "n9"}});
    CHECK_THROWS_AS(run(*alg, topo, default_payload_table(), stream, 10), WorkloadMismatch);

    auto cloud = make_algorithm(AlgorithmName::dfg_cloud);
    auto ok = DistributedEventStream::from_events({{"c0", "a", 1, "n0"}});
    CHECK_THROWS_AS(run(*cloud, topo, default_payload_table(), ok, 10), TopologyError);

    PayloadTable partial;
    partial.set("eventLog", {PayloadTerm::fixed(1), PayloadTerm::fixed(1)});
    CHECK_THROWS_AS(run(*alg, topo, partial, ok, 10), ConfigError);
}

TEST_CASE("resource names round-trip") {
    for (auto r : {Resource::cpu, Resource::memory, Resource::network}) CHECK(parse_resource(to_string(r)) == r);
    CHECK(instruction_kind(Resource::cpu) == HiiKind::compute);
    CHECK(instruction_kind(Resource::memory) == HiiKind::store);
    CHECK(instruction_kind(Resource::network) == HiiKind::send);
    CHECK_THROWS_AS(parse_resource("disk"), ConfigError);
}
