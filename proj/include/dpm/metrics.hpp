#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "dpm/engine.hpp"
#include "dpm/topology.hpp"

namespace dpm {

/// output[i] = mean(input[0..i]).
std::vector<double> running_mean(std::span<const double> series);

struct NodeSeries {
    std::vector<double> cpu, memory, network;
    std::vector<double> cpu_mean, memory_mean, network_mean;

    const std::vector<double>& values(Resource r) const;
    const std::vector<double>& means(Resource r) const;
};

/// Quality measures per trigger: processing time and per-node utilization,
/// each with its running mean.
struct MetricsSeries {
    std::vector<bool> is_request;
    std::vector<double> processing_time;
    std::vector<double> processing_time_mean;
    std::map<NodeId, NodeSeries> nodes;

    std::size_t size() const { return processing_time.size(); }
    /// Per-trigger sum over all nodes.
    std::vector<double> system(Resource r) const;
    /// Running mean of system(r).
    std::vector<double> system_mean(Resource r) const;
};

MetricsSeries compute_metrics(std::span<const DistributedTrace> traces, const Topology& topology, double delta_t);

/// Single-resource objective over all nodes.
///
/// cpu/network: at every trigger the maximum over nodes of the running-mean
/// utilization must stay at or below `threshold`. memory: the maximum over
/// nodes of cumulative memory divided by `memory_capacity` must.
struct ServiceLevelObjective {
    Resource resource = Resource::network;
    double threshold = 0.95;
    double memory_capacity = 1.0;

    friend bool operator==(const ServiceLevelObjective&, const ServiceLevelObjective&) = default;
};

void validate_slo(const ServiceLevelObjective& slo);
std::vector<double> slo_aggregate(const ServiceLevelObjective& slo, const MetricsSeries& series);
bool evaluate_slo(const ServiceLevelObjective& slo, const MetricsSeries& series);
/// Largest aggregate value over the run (0 for an empty series).
double peak_utilization(const ServiceLevelObjective& slo, const MetricsSeries& series);

enum class SearchMode { linear, bisect };

/// Index of the largest satisfied grid point. `bisect` assumes the verdicts
/// are a run of trues followed by falses.
std::optional<std::size_t> capacity_index(std::size_t grid_size, const std::function<bool(std::size_t)>& satisfied,
                                          SearchMode mode = SearchMode::linear);
/// Index of the smallest satisfied grid point. `bisect` assumes falses then
/// trues.
std::optional<std::size_t> demand_index(std::size_t grid_size, const std::function<bool(std::size_t)>& satisfied,
                                        SearchMode mode = SearchMode::linear);

/// Throws ConfigError unless the grid is nonempty, positive and strictly
/// ascending.
void validate_grid(std::span<const double> grid);

}  // namespace dpm
