#include "dpm/metrics.hpp"

#include <algorithm>
#include <string>

namespace dpm {

std::vector<double> running_mean(std::span<const double> series) {
    std::vector<double> out;
    out.reserve(series.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        sum += series[i];
        out.push_back(sum / static_cast<double>(i + 1));
    }
    return out;
}

const std::vector<double>& NodeSeries::values(Resource r) const {
    switch (r) {
        case Resource::cpu: return cpu;
        case Resource::memory: return memory;
        case Resource::network: return network;
    }
    return cpu;
}

const std::vector<double>& NodeSeries::means(Resource r) const {
    switch (r) {
        case Resource::cpu: return cpu_mean;
        case Resource::memory: return memory_mean;
        case Resource::network: return network_mean;
    }
    return cpu_mean;
}

std::vector<double> MetricsSeries::system(Resource r) const {
    std::vector<double> out(size(), 0.0);
    for (const auto& [id, ns] : nodes) {
        const auto& v = ns.values(r);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i];
    }
    return out;
}

std::vector<double> MetricsSeries::system_mean(Resource r) const { return running_mean(system(r)); }

MetricsSeries compute_metrics(std::span<const DistributedTrace> traces, const Topology& topology, double delta_t) {
    MetricsSeries m;
    m.is_request.reserve(traces.size());
    m.processing_time.reserve(traces.size());
    for (const auto& t : traces) {
        m.is_request.push_back(t.is_request());
        m.processing_time.push_back(processing_time(t));
    }
    m.processing_time_mean = running_mean(m.processing_time);
    for (const auto& node : topology.nodes()) {
        NodeSeries ns;
        ns.cpu = utilization(traces, node.id, Resource::cpu, delta_t);
        ns.memory = utilization(traces, node.id, Resource::memory, delta_t);
        ns.network = utilization(traces, node.id, Resource::network, delta_t);
        ns.cpu_mean = running_mean(ns.cpu);
        ns.memory_mean = running_mean(ns.memory);
        ns.network_mean = running_mean(ns.network);
        m.nodes.emplace(node.id, std::move(ns));
    }
    return m;
}

void validate_slo(const ServiceLevelObjective& slo) {
    if (!(slo.threshold > 0.0 && slo.threshold <= 1.0)) throw ConfigError("SLO threshold must lie in (0, 1]");
    if (!(slo.memory_capacity > 0.0)) throw ConfigError("memory capacity must be positive");
}

std::vector<double> slo_aggregate(const ServiceLevelObjective& slo, const MetricsSeries& series) {
    std::vector<double> out(series.size(), 0.0);
    for (const auto& [id, ns] : series.nodes) {
        const auto& v = slo.resource == Resource::memory ? ns.memory : ns.means(slo.resource);
        for (std::size_t i = 0; i < out.size(); ++i) {
            const double value = slo.resource == Resource::memory ? v[i] / slo.memory_capacity : v[i];
            out[i] = std::max(out[i], value);
        }
    }
    return out;
}

bool evaluate_slo(const ServiceLevelObjective& slo, const MetricsSeries& series) {
    const auto agg = slo_aggregate(slo, series);
    return std::all_of(agg.begin(), agg.end(), [&](double v) { return v <= slo.threshold; });
}

double peak_utilization(const ServiceLevelObjective& slo, const MetricsSeries& series) {
    const auto agg = slo_aggregate(slo, series);
    return agg.empty() ? 0.0 : *std::max_element(agg.begin(), agg.end());
}

std::optional<std::size_t> capacity_index(std::size_t n, const std::function<bool(std::size_t)>& satisfied,
                                          SearchMode mode) {
    if (mode == SearchMode::linear) {
        for (std::size_t i = n; i-- > 0;) {
            if (satisfied(i)) return i;
        }
        return std::nullopt;
    }
    // Last true in [true..true false..false]: search the first false.
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (satisfied(mid)) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (lo == 0) return std::nullopt;
    return lo - 1;
}

std::optional<std::size_t> demand_index(std::size_t n, const std::function<bool(std::size_t)>& satisfied,
                                        SearchMode mode) {
    if (mode == SearchMode::linear) {
        for (std::size_t i = 0; i < n; ++i) {
            if (satisfied(i)) return i;
        }
        return std::nullopt;
    }
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (satisfied(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (lo == n) return std::nullopt;
    return lo;
}

void validate_grid(std::span<const double> grid) {
    if (grid.empty()) throw ConfigError("grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0)) throw ConfigError("grid values must be positive");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("grid must be strictly ascending");
    }
}

}  // namespace dpm
