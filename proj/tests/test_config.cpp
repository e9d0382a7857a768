#include <doctest.h>

#include "dpm/bench.hpp"
#include "dpm/config.hpp"

using namespace dpm;

namespace {

const char* minimal_doc = R"({
  "topology": {"kind": "distributed", "edge_nodes": ["n0", "n1"]},
  "workload": {"events": [
    {"case": "c0", "activity": "x", "timestamp": 1, "location": "n0"},
    {"case": "c0", "activity": "y", "timestamp": 2, "location": "n1"}
  ]},
  "algorithm": "edgeminer"
})";

}  // namespace

TEST_CASE("missing sections fall back to defaults") {
    const auto c = parse_scenario(minimal_doc);
    CHECK(c.payloads == default_payload_table());
    CHECK(c.slo == ServiceLevelObjective{});
    CHECK(c.run.request_cadence == RunSettings{}.request_cadence);
    CHECK(c.run.n_events == 2);
    CHECK(c.algorithm == AlgorithmName::edgeminer);
    CHECK(c.topology.compute == TopologyBlueprint{}.compute);
    const auto out = simulate(c, make_stream(c));
    CHECK(out.result.traces.size() == 2);
}

TEST_CASE("payload terms accept numbers, len and affine objects") {
    auto doc = nlohmann::json::parse(minimal_doc);
    doc["payloads"] = nlohmann::json::parse(R"({
      "eventLog": {"p": 2, "q": "len"},
      "followsRelation": {"p": {"const": 1, "per_arg": 0.5}, "q": 0}
    })");
    const auto c = scenario_from_json(doc);
    CHECK(c.payloads.payload("eventLog", 3) == Payload{2, 3});
    CHECK(c.payloads.payload("followsRelation", 2) == Payload{2, 0});
    CHECK_FALSE(c.payloads.contains("latestTimestamp"));
    CHECK_THROWS_AS(validate_scenario(c), ConfigError);
}

TEST_CASE("builtin model references") {
    auto doc = nlohmann::json::parse(minimal_doc);
    doc["topology"]["edge_nodes"] = {"n0", "n1", "n2", "n3", "n4", "n5", "n6"};
    doc["workload"] = nlohmann::json::parse(R"({"model": {"builtin": "linear-factory", "case_arrival": 3}})");
    const auto c = scenario_from_json(doc);
    REQUIRE(c.workload.model);
    CHECK(*c.workload.model == linear_factory_model(3));

    doc["workload"]["model"]["builtin"] = "factory";
    CHECK(*scenario_from_json(doc).workload.model == builtin_factory_model({0.05, 0.1, 3}));
    doc["workload"]["model"]["builtin"] = "bakery";
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigError);
}

TEST_CASE("malformed documents raise config errors") {
    CHECK_THROWS_AS(parse_scenario("{"), ConfigError);
    CHECK_THROWS_AS(parse_scenario("[]"), ConfigError);
    CHECK_THROWS_AS(parse_scenario(R"({"topology": {"kind": "distributed"}})"), ConfigError);

    auto doc = nlohmann::json::parse(minimal_doc);
    doc["algorithm"] = "dfg-mesh";
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigError);
    doc = nlohmann::json::parse(minimal_doc);
    doc["topology"]["kind"] = "ring";
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigError);
    doc = nlohmann::json::parse(minimal_doc);
    doc["workload"] = nlohmann::json::object();
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigError);
    doc = nlohmann::json::parse(minimal_doc);
    doc["slo"] = {{"resource", "disk"}};
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigError);
    doc = nlohmann::json::parse(minimal_doc);
    doc["run"] = {{"request_cadence", "often"}};
    CHECK_THROWS_AS(scenario_from_json(doc), ConfigError);
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/scenario.json"), ConfigError);
}

TEST_CASE("scenario documents round-trip") {
    std::vector<ScenarioConfig> configs;
    for (const auto& name : preset_names()) configs.push_back(preset_by_name(name));

    auto custom = factory_preset(AlgorithmName::dfg_fog);
    custom.topology.fog_subnets = {{"east", {"n0", "n1", "n2"}}, {"west", {"n3", "n4", "n5", "n6"}}};
    custom.topology.capacity_factor = 2.5;
    custom.topology.fog_fog_link = 3.0;
    custom.payloads.set("forwardEvent", {PayloadTerm{0.5, 0.25}, PayloadTerm::length()});
    custom.workload.model->max_cases = 400;
    custom.workload.model->error_termination_prob = 0.0;
    custom.run = {7, 0.25, 333, 9};
    custom.slo = {Resource::memory, 0.5, 40.0};
    configs.push_back(custom);

    auto central = factory_preset(AlgorithmName::dfg_cloud);
    central.topology.cloud_node = "dc";
    configs.push_back(central);

    for (const auto& c : configs) {
        INFO(c.name);
        const auto text = emit_scenario(c);
        const auto back = parse_scenario(text);
        CHECK(back == c);
        CHECK(emit_scenario(back) == text);
    }
}
