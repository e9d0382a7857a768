#include "dpm/bench.hpp"

#include <string>

namespace dpm {

std::vector<Event> worked_example_events() {
    return {{"c0", "a0", 1, "n1"}, {"c0", "a1", 2, "n0"}};
}

ScenarioConfig worked_example_preset() {
    ScenarioConfig c;
    c.name = "worked-example";
    c.topology.kind = TopologyKind::distributed;
    c.topology.edge_nodes = {"n0", "n1", "n2"};
    c.topology.compute = {2.0, 1.0 / 100.0};
    c.topology.store = {3.0, 1.0 / 100.0};
    c.topology.send = {10.0, 1.0 / 20.0};
    c.payloads = default_payload_table();
    c.workload.events = worked_example_events();
    c.algorithm = AlgorithmName::dfg_edge;
    c.run.request_cadence = 2;
    c.run.delta_t = 1.0;
    c.run.n_events = 2;
    c.run.seed = 0;
    c.slo = {Resource::network, 0.95, 1.0};
    return c;
}

TopologyBlueprint factory_topology(TopologyKind kind) {
    TopologyBlueprint bp;
    bp.kind = kind;
    for (int i = 0; i < 7; ++i) bp.edge_nodes.push_back("n" + std::to_string(i));
    if (kind == TopologyKind::decentral) {
        bp.fog_subnets = {{"fog0", {"n0", "n1", "n2", "n3"}}, {"fog1", {"n4", "n5", "n6"}}};
    }
    bp.cloud_node = "cloud";
    bp.compute = {2.0, 0.01};
    bp.store = {3.0, 0.01};
    bp.send = {10.0, 0.05};
    bp.edge_scale = 1.0;
    bp.fog_scale = 1.5;
    bp.cloud_scale = 2.0;
    bp.edge_edge_link = 1.0;
    bp.edge_fog_link = 1.5;
    bp.edge_cloud_link = 5.0;
    bp.fog_fog_link = 1.5;
    return bp;
}

ScenarioConfig factory_preset(AlgorithmName algorithm) {
    ScenarioConfig c;
    switch (algorithm) {
        case AlgorithmName::dfg_cloud: c.name = "factory-cloud"; break;
        case AlgorithmName::dfg_fog: c.name = "factory-fog"; break;
        case AlgorithmName::dfg_edge: c.name = "factory-edge"; break;
        case AlgorithmName::edgeminer: c.name = "factory-edgeminer"; break;
    }
    c.topology = factory_topology(binding(algorithm).topology_kind);
    c.payloads = default_payload_table();
    c.workload.model = builtin_factory_model();
    c.algorithm = algorithm;
    c.run.request_cadence = 10;
    c.run.delta_t = 1.0;
    c.run.n_events = 1000;
    c.run.seed = 42;
    c.slo = {Resource::network, 0.95, 1.0};
    return c;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names = {"worked-example"};
    for (auto a : all_algorithms()) names.push_back(factory_preset(a).name);
    return names;
}

ScenarioConfig preset_by_name(std::string_view name) {
    if (name == "worked-example") return worked_example_preset();
    for (auto a : all_algorithms()) {
        auto c = factory_preset(a);
        if (c.name == name) return c;
    }
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

}  // namespace dpm
