#include "dpm/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>

namespace dpm {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", value);
    std::string s = buf;
    if (s == "-0.000000000") s = "0.000000000";
    return s;
}

namespace {

const char* trigger_kind(bool is_request) { return is_request ? "request" : "event"; }

}  // namespace

void write_metrics_csv(std::ostream& out, const MetricsSeries& m) {
    out << "trigger_index,trigger_kind,processing_time,processing_time_mean";
    for (const auto& [id, ns] : m.nodes) {
        out << ',' << id << "_cpu_util," << id << "_mem_util," << id << "_net_util," << id << "_cpu_mean," << id
            << "_mem_mean," << id << "_net_mean";
    }
    out << '\n';
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << (i + 1) << ',' << trigger_kind(m.is_request[i]) << ',' << format_number(m.processing_time[i]) << ','
            << format_number(m.processing_time_mean[i]);
        for (const auto& [id, ns] : m.nodes) {
            out << ',' << format_number(ns.cpu[i]) << ',' << format_number(ns.memory[i]) << ','
                << format_number(ns.network[i]) << ',' << format_number(ns.cpu_mean[i]) << ','
                << format_number(ns.memory_mean[i]) << ',' << format_number(ns.network_mean[i]);
        }
        out << '\n';
    }
}

void write_summary_csv(std::ostream& out, const SimulationOutcome& outcome) {
    out << "kind,from,to,value\n";
    if (!outcome.result.models.empty()) {
        for (const auto& [edge, count] : outcome.result.models.back().dfg.edges()) {
            out << "edge," << edge.first << ',' << edge.second << ',' << count << '\n';
        }
    }
    const auto& m = outcome.metrics;
    for (const auto& [id, ns] : m.nodes) {
        double cpu = 0.0, net = 0.0;
        for (double v : ns.cpu) cpu += v;
        for (double v : ns.network) net += v;
        const double mem = ns.memory.empty() ? 0.0 : ns.memory.back();
        out << "total," << id << ",cpu," << format_number(cpu) << '\n';
        out << "total," << id << ",memory," << format_number(mem) << '\n';
        out << "total," << id << ",network," << format_number(net) << '\n';
    }
    double pt = 0.0;
    for (double v : m.processing_time) pt += v;
    out << "total,all,processing_time," << format_number(pt) << '\n';
}

void write_traces_csv(std::ostream& out, const std::vector<DistributedTrace>& traces) {
    out << "trigger_index,node_id,kind,target,method_tag,p,q,time,util\n";
    for (std::size_t i = 0; i < traces.size(); ++i) {
        for (const auto& s : traces[i].steps) {
            out << (i + 1) << ',' << s.node_id << ',' << to_string(s.kind) << ',' << s.target.value_or("") << ','
                << s.method_tag << ',' << format_number(s.payload.p) << ',' << format_number(s.payload.q) << ','
                << format_number(s.cost.time) << ',' << format_number(s.cost.util) << '\n';
        }
    }
}

void write_plot_csv(std::ostream& out, const MetricsSeries& m) {
    const auto cpu = m.system_mean(Resource::cpu);
    const auto mem = m.system_mean(Resource::memory);
    const auto net = m.system_mean(Resource::network);
    out << "trigger_index,trigger_kind,processing_time_mean,cpu_mean,mem_mean,net_mean\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        out << (i + 1) << ',' << trigger_kind(m.is_request[i]) << ',' << format_number(m.processing_time_mean[i]) << ','
            << format_number(cpu[i]) << ',' << format_number(mem[i]) << ',' << format_number(net[i]) << '\n';
    }
}

void write_sweep_csv(std::ostream& out, const SweepResult& result, const ServiceLevelObjective& slo) {
    out << "grid_value,slo_resource,threshold,satisfied,peak_utilization\n";
    for (const auto& p : result.points) {
        out << format_number(p.grid_value) << ',' << to_string(slo.resource) << ',' << format_number(slo.threshold)
            << ',' << (p.satisfied ? "true" : "false") << ',' << format_number(p.peak_utilization) << '\n';
    }
}

void write_compare_csv(std::ostream& out, const std::vector<std::pair<std::string, MetricsSeries>>& runs) {
    if (runs.empty()) return;
    struct Columns {
        std::vector<double> cpu, mem, net;
    };
    std::vector<Columns> cols;
    out << "trigger_index,trigger_kind";
    for (const auto& [name, m] : runs) {
        out << ',' << name << "_processing_time_mean," << name << "_cpu_mean," << name << "_mem_mean," << name
            << "_net_mean";
        cols.push_back({m.system_mean(Resource::cpu), m.system_mean(Resource::memory), m.system_mean(Resource::network)});
    }
    out << '\n';
    const auto& first = runs.front().second;
    for (std::size_t i = 0; i < first.size(); ++i) {
        out << (i + 1) << ',' << trigger_kind(first.is_request[i]);
        for (std::size_t r = 0; r < runs.size(); ++r) {
            out << ',' << format_number(runs[r].second.processing_time_mean[i]) << ',' << format_number(cols[r].cpu[i])
                << ',' << format_number(cols[r].mem[i]) << ',' << format_number(cols[r].net[i]);
        }
        out << '\n';
    }
}

namespace {

double final_value(const std::vector<double>& v) { return v.empty() ? 0.0 : v.back(); }

std::string describe(std::initializer_list<std::pair<AlgorithmName, double>> values) {
    std::string s;
    for (const auto& [name, v] : values) {
        if (!s.empty()) s += ", ";
        s += std::string(to_string(name)) + "=" + format_number(v);
    }
    return s;
}

}  // namespace

std::vector<TrendCheck> trend_report(const std::vector<std::pair<AlgorithmName, MetricsSeries>>& runs) {
    std::map<AlgorithmName, const MetricsSeries*> by_name;
    for (const auto& [name, m] : runs) by_name[name] = &m;
    auto has = [&](AlgorithmName n) { return by_name.count(n) != 0; };
    auto net = [&](AlgorithmName n) { return final_value(by_name.at(n)->system_mean(Resource::network)); };
    auto pt = [&](AlgorithmName n) { return final_value(by_name.at(n)->processing_time_mean); };
    auto memory = [&](AlgorithmName n) {
        double total = 0.0;
        for (const auto& [id, ns] : by_name.at(n)->nodes) total += final_value(ns.memory);
        return total;
    };

    using A = AlgorithmName;
    std::vector<TrendCheck> checks;
    if (has(A::dfg_edge) && has(A::dfg_fog) && has(A::dfg_cloud)) {
        const double e = net(A::dfg_edge), f = net(A::dfg_fog), c = net(A::dfg_cloud);
        checks.push_back({"network: dfg-edge > dfg-fog > dfg-cloud", e > f && f > c,
                          describe({{A::dfg_edge, e}, {A::dfg_fog, f}, {A::dfg_cloud, c}})});
    }
    {
        bool monotone = true;
        for (const auto& [name, m] : runs) {
            for (const auto& [id, ns] : m.nodes) {
                monotone = monotone && std::is_sorted(ns.memory.begin(), ns.memory.end());
            }
        }
        checks.push_back({"memory nondecreasing at every node", monotone, ""});
    }
    if (has(A::edgeminer) && has(A::dfg_edge)) {
        const double em = memory(A::edgeminer), ed = memory(A::dfg_edge);
        checks.push_back({"memory: edgeminer > dfg-edge", em > ed, describe({{A::edgeminer, em}, {A::dfg_edge, ed}})});
        const double pe = pt(A::edgeminer), pd = pt(A::dfg_edge);
        checks.push_back({"processing time: edgeminer < dfg-edge", pe < pd,
                          describe({{A::edgeminer, pe}, {A::dfg_edge, pd}})});
    }
    if (has(A::dfg_edge) && runs.size() > 1) {
        bool edge_max = true;
        for (const auto& [name, m] : runs) {
            if (name != A::dfg_edge) edge_max = edge_max && pt(A::dfg_edge) > final_value(m.processing_time_mean);
        }
        checks.push_back({"processing time: dfg-edge is the maximum", edge_max, ""});
    }
    return checks;
}

}  // namespace dpm
