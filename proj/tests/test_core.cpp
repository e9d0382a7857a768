#include <doctest.h>

#include <random>

#include "dpm/cost_model.hpp"
#include "dpm/dfg.hpp"
#include "dpm/topology.hpp"
#include "dpm/types.hpp"

using namespace dpm;

namespace {

DirectlyFollowsGraph random_dfg(std::mt19937_64& rng) {
    DirectlyFollowsGraph g;
    std::uniform_int_distribution<int> act(0, 3), cnt(1, 5), len(0, 6);
    for (int i = len(rng); i > 0; --i) {
        g.add("a" + std::to_string(act(rng)), "a" + std::to_string(act(rng)), cnt(rng));
    }
    return g;
}

ComputingNode plain_node(const NodeId& id, NodeClass cls, const std::vector<NodeId>& peers) {
    ComputingNode n{id, cls, 1.0, {{HiiKind::compute, 2, 0.01, {}}, {HiiKind::store, 3, 0.01, {}}}};
    for (const auto& p : peers) n.instructions.push_back({HiiKind::send, 10, 0.05, p});
    return n;
}

}  // namespace

TEST_CASE("merge of empty graphs is empty") {
    CHECK(merge_dfg({}, {}).empty());
}

TEST_CASE("merge sums counts pairwise") {
    DirectlyFollowsGraph a, b, expected;
    a.add("a0", "a1");
    b.add("a0", "a1", 2);
    b.add("a1", "a2");
    expected.add("a0", "a1", 3);
    expected.add("a1", "a2", 1);
    CHECK(merge_dfg(a, b) == expected);
}

TEST_CASE("merge is commutative, associative and has the empty graph as identity") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const auto a = random_dfg(rng), b = random_dfg(rng), c = random_dfg(rng);
        CHECK(merge_dfg(a, b) == merge_dfg(b, a));
        CHECK(merge_dfg(merge_dfg(a, b), c) == merge_dfg(a, merge_dfg(b, c)));
        CHECK(merge_dfg(a, {}) == a);
        CHECK(merge_dfg(a, b).total() == a.total() + b.total());
    }
}

TEST_CASE("dfg stores positive counts only") {
    DirectlyFollowsGraph g;
    g.add("x", "y", 0);
    CHECK(g.empty());
    CHECK(g.count("x", "y") == 0);
}

TEST_CASE("apply_hii evaluates the linear cost function") {
    Hii compute{HiiKind::compute, 2, 1.0 / 100, {}};
    auto c = apply_hii(compute, 1, 1);
    CHECK(c.time == 2.0);
    CHECK(c.util == doctest::Approx(0.01));

    Hii send{HiiKind::send, 10, 1.0 / 20, "n1"};
    auto s = apply_hii(send, 2, 5);
    CHECK(s.time == 20.0);
    CHECK(s.util == doctest::Approx(0.25));

    CHECK(apply_hii(send, 0, 0) == CostVector{0, 0});
    CHECK(apply_hii(compute, 0, 0) == CostVector{0, 0});
}

TEST_CASE("apply_hii rejects negative payloads") {
    Hii h{HiiKind::store, 3, 0.01, {}};
    CHECK_THROWS_AS(apply_hii(h, -1, 0), InvalidPayload);
    CHECK_THROWS_AS(apply_hii(h, 0, -0.5), InvalidPayload);
}

TEST_CASE("apply_hii is linear in the payload") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        Hii h{HiiKind::compute, u(rng) + 0.1, u(rng) / 10.0, {}};
        const double p1 = u(rng), q1 = u(rng), p2 = u(rng), q2 = u(rng);
        const auto a = apply_hii(h, p1, q1), b = apply_hii(h, p2, q2), ab = apply_hii(h, p1 + p2, q1 + q2);
        CHECK(ab.time == doctest::Approx(a.time + b.time));
        CHECK(ab.util == doctest::Approx(a.util + b.util));
    }
}

TEST_CASE("validate_hii checks coefficients and targets") {
    CHECK_NOTHROW(validate_hii({HiiKind::send, 10, 0.05, "n1"}));
    CHECK_THROWS_AS(validate_hii({HiiKind::send, 10, 0.05, {}}), TopologyError);
    CHECK_THROWS_AS(validate_hii({HiiKind::store, 3, 0.01, "n1"}), TopologyError);
    CHECK_THROWS_AS(validate_hii({HiiKind::compute, 0, 0.01, {}}), TopologyError);
    CHECK_THROWS_AS(validate_hii({HiiKind::compute, 1, 1.5, {}}), TopologyError);
}

TEST_CASE("default payload table") {
    const auto t = default_payload_table();
    CHECK(t.payload(tags::event_log, 4) == Payload{1, 1});
    CHECK(t.payload(tags::follows_relation, 2) == Payload{1, 2});
    CHECK(t.payload(tags::latest_timestamp, 0) == Payload{0, 0});
    CHECK(t.payload(tags::latest_timestamp, 3) == Payload{3, 3});
    CHECK(t.payload(tags::get_latest_event, 1) == Payload{1, 0});
    CHECK(t.payload(tags::get_follows_relations, 0) == Payload{1, 0});
    CHECK(t.payload(tags::request_last_event, 1) == Payload{1, 1});
    CHECK(t.payload(tags::forward_event, 4) == Payload{1, 1});
    CHECK(t.payload(tags::request_follows_relations, 9) == Payload{1, 1});
    CHECK(t.payload(tags::merge_follows_relations, 5) == Payload{5, 5});
    CHECK_THROWS_AS(t.payload("noSuchMethod", 0), ConfigError);
}

TEST_CASE("distributed stream partitions and merges back") {
    std::vector<Event> events{{"c0", "a0", 1, "n1"}, {"c0", "a1", 2, "n0"}, {"c1", "a0", 3, "n1"}};
    auto s = DistributedEventStream::from_events(events);
    CHECK(s.size() == 3);
    CHECK(s.streams().size() == 2);
    CHECK(s.streams().at("n1").events.size() == 2);
    CHECK(s.merged() == events);
    CHECK(DistributedEventStream{}.empty());
}

TEST_CASE("distributed stream rejects non-increasing timestamps") {
    CHECK_THROWS_AS(DistributedEventStream::from_events({{"c0", "a0", 2, "n0"}, {"c0", "a1", 2, "n1"}}), WorkloadMismatch);
}

TEST_CASE("distributed topology from blueprint") {
    TopologyBlueprint bp;
    bp.edge_nodes = {"n2", "n0", "n1"};
    auto t = build_topology(bp);
    CHECK(t.kind() == TopologyKind::distributed);
    CHECK(t.edge_nodes() == std::vector<NodeId>{"n0", "n1", "n2"});
    CHECK(t.node("n0").peers() == std::vector<NodeId>{"n1", "n2"});
    CHECK(t.node("n0").compute() == Hii{HiiKind::compute, 2, 0.01, {}});
    CHECK(t.node("n0").store() == Hii{HiiKind::store, 3, 0.01, {}});
    CHECK(*t.node("n0").find_send("n1") == Hii{HiiKind::send, 10, 0.05, NodeId("n1")});
    CHECK_THROWS_AS(t.node("n0").instruction(HiiKind::send, NodeId("n9")), UnreachablePeer);
}

TEST_CASE("central topology scales the cloud and stretches edge-cloud sends") {
    TopologyBlueprint bp;
    bp.kind = TopologyKind::central;
    bp.edge_nodes = {"n0", "n1"};
    auto t = build_topology(bp);
    CHECK(t.cloud_node() == NodeId("cloud"));
    const auto& cloud = t.node("cloud");
    CHECK(cloud.store().time_coeff == doctest::Approx(1.5));
    CHECK(cloud.store().util_coeff == doctest::Approx(0.005));
    CHECK(t.link_multiplier("n0", "cloud") == 5.0);
    CHECK(t.link_multiplier("cloud", "n0") == 5.0);
    CHECK(t.node("n0").find_send("cloud")->time_coeff == doctest::Approx(50.0));
    CHECK(t.node("n0").find_send("cloud")->util_coeff == doctest::Approx(0.05));
}

TEST_CASE("decentral topology assigns subnets") {
    TopologyBlueprint bp;
    bp.kind = TopologyKind::decentral;
    bp.edge_nodes = {"n0", "n1", "n2"};
    bp.fog_subnets = {{"fog0", {"n0", "n1"}}, {"fog1", {"n2"}}};
    auto t = build_topology(bp);
    CHECK(t.fog_nodes() == std::vector<NodeId>{"fog0", "fog1"});
    CHECK(t.fog_of("n2") == "fog1");
    CHECK(t.node("fog0").compute().time_coeff == doctest::Approx(2.0 / 1.5));
    CHECK(t.node("fog0").find_send("fog1")->time_coeff == doctest::Approx(15.0));
}

TEST_CASE("capacity factor divides every utilization coefficient") {
    TopologyBlueprint bp;
    bp.edge_nodes = {"n0", "n1"};
    bp.capacity_factor = 2.0;
    auto t = build_topology(bp);
    CHECK(t.node("n0").compute().util_coeff == doctest::Approx(0.005));
    CHECK(t.node("n0").compute().time_coeff == doctest::Approx(1.0));
    CHECK(t.node("n0").find_send("n1")->util_coeff == doctest::Approx(0.025));
    CHECK(t.node("n0").find_send("n1")->time_coeff == doctest::Approx(10.0));
}

TEST_CASE("topology rejects invalid structures") {
    using K = TopologyKind;
    using C = NodeClass;
    CHECK_THROWS_AS(Topology(K::distributed, {}), TopologyError);
    CHECK_THROWS_AS(Topology(K::distributed, {plain_node("n0", C::edge, {}), plain_node("n0", C::edge, {})}),
                    TopologyError);
    // disconnected edge nodes
    CHECK_THROWS_AS(Topology(K::distributed, {plain_node("n0", C::edge, {}), plain_node("n1", C::edge, {})}),
                    TopologyError);
    CHECK_THROWS_AS(Topology(K::distributed, {plain_node("n0", C::edge, {"n9"})}), TopologyError);
    CHECK_THROWS_AS(Topology(K::distributed, {plain_node("n0", C::edge, {"n0"})}), TopologyError);
    // a fog node in a distributed topology
    CHECK_THROWS_AS(Topology(K::distributed, {plain_node("n0", C::edge, {"f"}), plain_node("f", C::fog, {"n0"})}),
                    TopologyError);
    // central without a cloud
    CHECK_THROWS_AS(Topology(K::central, {plain_node("n0", C::edge, {})}), TopologyError);
    // decentral edge node outside every subnet
    CHECK_THROWS_AS(Topology(K::decentral,
                             {plain_node("n0", C::edge, {"f"}), plain_node("n1", C::edge, {"f"}),
                              plain_node("f", C::fog, {"n0", "n1"})},
                             {}, {{"f", {"n0"}}}),
                    TopologyError);
    // asymmetric link multipliers
    CHECK_THROWS_AS(Topology(K::distributed, {plain_node("n0", C::edge, {"n1"}), plain_node("n1", C::edge, {"n0"})},
                             {{{"n0", "n1"}, 1.0}, {{"n1", "n0"}, 2.0}}),
                    TopologyError);
    // node without a store instruction
    auto n = plain_node("n0", C::edge, {});
    n.instructions.erase(n.instructions.begin() + 1);
    CHECK_THROWS_AS(Topology(K::distributed, {n}), TopologyError);

    TopologyBlueprint bp;
    bp.edge_nodes = {"n0"};
    bp.capacity_factor = 0.0;
    CHECK_THROWS_AS(build_topology(bp), TopologyError);
}
