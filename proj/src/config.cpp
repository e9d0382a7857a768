#include "dpm/config.hpp"

#include <fstream>
#include <sstream>

namespace dpm {

using nlohmann::json;

namespace {

json term_to_json(const PayloadTerm& t) {
    if (t.per_arg == 0.0) return t.constant;
    if (t.constant == 0.0 && t.per_arg == 1.0) return "len";
    return {{"const", t.constant}, {"per_arg", t.per_arg}};
}

PayloadTerm term_from_json(const json& j) {
    if (j.is_number()) return PayloadTerm::fixed(j.get<double>());
    if (j.is_string() && j.get<std::string>() == "len") return PayloadTerm::length();
    if (j.is_object()) return {j.value("const", 0.0), j.value("per_arg", 0.0)};
    throw ConfigError("payload term must be a number, \"len\" or {\"const\", \"per_arg\"}");
}

json costs_to_json(const CostCoefficients& c) { return {{"time", c.time}, {"util", c.util}}; }

CostCoefficients costs_from_json(const json& j) { return {j.at("time").get<double>(), j.at("util").get<double>()}; }

json steps_to_json(const std::vector<ProcessModelSpec::Step>& steps) {
    json out = json::array();
    for (const auto& s : steps) out.push_back({{"activity", s.activity}, {"probability", s.probability}});
    return out;
}

std::vector<ProcessModelSpec::Step> steps_from_json(const json& j) {
    std::vector<ProcessModelSpec::Step> out;
    for (const auto& s : j) out.push_back({s.at("activity").get<std::string>(), s.at("probability").get<double>()});
    return out;
}

json model_to_json(const ProcessModelSpec& m) {
    json activities = json::array();
    for (const auto& [a, loc] : m.activities) activities.push_back({{"activity", a}, {"location", loc}});
    json transitions = json::object();
    for (const auto& [from, steps] : m.transitions) transitions[from] = steps_to_json(steps);
    json out = {{"activities", activities},
                {"transitions", transitions},
                {"start_activities", steps_to_json(m.start_activities)},
                {"end_activities", m.end_activities},
                {"error_termination_prob", m.error_termination_prob},
                {"case_arrival", m.case_arrival}};
    out["max_cases"] = m.max_cases ? json(*m.max_cases) : json(nullptr);
    return out;
}

ProcessModelSpec model_from_json(const json& j) {
    if (j.contains("builtin")) {
        const auto kind = j.at("builtin").get<std::string>();
        FactoryModelOptions opts;
        if (kind == "linear-factory") opts = {0.0, 0.0, opts.case_arrival};
        else if (kind != "factory") throw ConfigError("unknown builtin model '" + kind + "'");
        opts.error_termination_prob = j.value("error_termination_prob", opts.error_termination_prob);
        opts.quality_loop_prob = j.value("quality_loop_prob", opts.quality_loop_prob);
        opts.case_arrival = j.value("case_arrival", opts.case_arrival);
        return builtin_factory_model(opts);
    }
    ProcessModelSpec m;
    for (const auto& a : j.at("activities")) {
        m.activities.emplace_back(a.at("activity").get<std::string>(), a.at("location").get<std::string>());
    }
    for (const auto& [from, steps] : j.at("transitions").items()) m.transitions[from] = steps_from_json(steps);
    m.start_activities = steps_from_json(j.at("start_activities"));
    for (const auto& a : j.at("end_activities")) m.end_activities.insert(a.get<std::string>());
    m.error_termination_prob = j.value("error_termination_prob", 0.0);
    m.case_arrival = j.value("case_arrival", std::uint64_t{1});
    if (j.contains("max_cases") && !j.at("max_cases").is_null()) m.max_cases = j.at("max_cases").get<std::uint64_t>();
    return m;
}

json topology_to_json(const TopologyBlueprint& bp) {
    json out = {{"kind", std::string(to_string(bp.kind))},
                {"edge_nodes", bp.edge_nodes},
                {"costs", {{"compute", costs_to_json(bp.compute)}, {"store", costs_to_json(bp.store)}, {"send", costs_to_json(bp.send)}}},
                {"scales", {{"edge", bp.edge_scale}, {"fog", bp.fog_scale}, {"cloud", bp.cloud_scale}}},
                {"links",
                 {{"edge-edge", bp.edge_edge_link},
                  {"edge-fog", bp.edge_fog_link},
                  {"edge-cloud", bp.edge_cloud_link},
                  {"fog-fog", bp.fog_fog_link}}},
                {"capacity_factor", bp.capacity_factor}};
    if (bp.kind == TopologyKind::decentral) out["fog_subnets"] = bp.fog_subnets;
    if (bp.kind == TopologyKind::central) out["cloud_node"] = bp.cloud_node;
    return out;
}

TopologyBlueprint topology_from_json(const json& j) {
    TopologyBlueprint bp;
    bp.kind = parse_topology_kind(j.at("kind").get<std::string>());
    bp.edge_nodes = j.at("edge_nodes").get<std::vector<NodeId>>();
    if (j.contains("fog_subnets")) bp.fog_subnets = j.at("fog_subnets").get<std::map<NodeId, std::vector<NodeId>>>();
    bp.cloud_node = j.value("cloud_node", bp.cloud_node);
    if (j.contains("costs")) {
        const auto& c = j.at("costs");
        if (c.contains("compute")) bp.compute = costs_from_json(c.at("compute"));
        if (c.contains("store")) bp.store = costs_from_json(c.at("store"));
        if (c.contains("send")) bp.send = costs_from_json(c.at("send"));
    }
    if (j.contains("scales")) {
        const auto& s = j.at("scales");
        bp.edge_scale = s.value("edge", bp.edge_scale);
        bp.fog_scale = s.value("fog", bp.fog_scale);
        bp.cloud_scale = s.value("cloud", bp.cloud_scale);
    }
    if (j.contains("links")) {
        const auto& l = j.at("links");
        bp.edge_edge_link = l.value("edge-edge", bp.edge_edge_link);
        bp.edge_fog_link = l.value("edge-fog", bp.edge_fog_link);
        bp.edge_cloud_link = l.value("edge-cloud", bp.edge_cloud_link);
        bp.fog_fog_link = l.value("fog-fog", bp.fog_fog_link);
    }
    bp.capacity_factor = j.value("capacity_factor", bp.capacity_factor);
    return bp;
}

}  // namespace

json scenario_to_json(const ScenarioConfig& c) {
    json payloads = json::object();
    for (const auto& [tag, rule] : c.payloads.rules()) payloads[tag] = {{"p", term_to_json(rule.p)}, {"q", term_to_json(rule.q)}};

    json workload;
    if (c.workload.model) {
        workload["model"] = model_to_json(*c.workload.model);
    } else {
        json events = json::array();
        for (const auto& e : c.workload.events) {
            events.push_back({{"case", e.case_id}, {"activity", e.activity}, {"timestamp", e.timestamp}, {"location", e.location}});
        }
        workload["events"] = events;
    }

    return {{"name", c.name},
            {"topology", topology_to_json(c.topology)},
            {"payloads", payloads},
            {"workload", workload},
            {"algorithm", std::string(to_string(c.algorithm))},
            {"run",
             {{"request_cadence", c.run.request_cadence},
              {"delta_t", c.run.delta_t},
              {"n_events", c.run.n_events},
              {"seed", c.run.seed}}},
            {"slo",
             {{"resource", std::string(to_string(c.slo.resource))},
              {"threshold", c.slo.threshold},
              {"memory_capacity", c.slo.memory_capacity}}}};
}

ScenarioConfig scenario_from_json(const json& doc) {
    try {
        if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
        ScenarioConfig c;
        c.name = doc.value("name", std::string("custom"));
        c.topology = topology_from_json(doc.at("topology"));
        if (doc.contains("payloads")) {
            for (const auto& [tag, rule] : doc.at("payloads").items()) {
                c.payloads.set(tag, {term_from_json(rule.at("p")), term_from_json(rule.at("q"))});
            }
        } else {
            c.payloads = default_payload_table();
        }
        const auto& w = doc.at("workload");
        if (w.contains("model")) {
            c.workload.model = model_from_json(w.at("model"));
        } else if (w.contains("events")) {
            for (const auto& e : w.at("events")) {
                c.workload.events.push_back({e.at("case").get<std::string>(), e.at("activity").get<std::string>(),
                                             e.at("timestamp").get<Timestamp>(), e.at("location").get<std::string>()});
            }
        } else {
            throw ConfigError("workload needs a \"model\" or an \"events\" list");
        }
        c.algorithm = parse_algorithm_name(doc.at("algorithm").get<std::string>());
        if (doc.contains("run")) {
            const auto& r = doc.at("run");
            c.run.request_cadence = r.value("request_cadence", c.run.request_cadence);
            c.run.delta_t = r.value("delta_t", c.run.delta_t);
            c.run.n_events = r.value("n_events", c.run.n_events);
            c.run.seed = r.value("seed", c.run.seed);
        }
        if (!c.workload.events.empty()) c.run.n_events = c.workload.events.size();
        if (doc.contains("slo")) {
            const auto& s = doc.at("slo");
            c.slo.resource = parse_resource(s.value("resource", std::string("network")));
            c.slo.threshold = s.value("threshold", c.slo.threshold);
            c.slo.memory_capacity = s.value("memory_capacity", c.slo.memory_capacity);
        }
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed scenario: ") + e.what());
    }
}

std::string emit_scenario(const ScenarioConfig& config) { return scenario_to_json(config).dump(2) + "\n"; }

ScenarioConfig parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    return scenario_from_json(doc);
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

}  // namespace dpm
