#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dpm/metrics.hpp"
#include "dpm/scenario.hpp"

namespace dpm {

struct SweepOptions {
    SearchMode mode = SearchMode::linear;
    /// Worker threads for linear sweeps. Results do not depend on it.
    unsigned jobs = 1;
};

struct SweepPoint {
    double grid_value = 0.0;
    bool satisfied = false;
    double peak_utilization = 0.0;
    MetricsSeries metrics;
};

struct SweepResult {
    /// Evaluated points in grid order. Linear sweeps evaluate every point,
    /// bisection only the probed ones.
    std::vector<SweepPoint> points;
    /// Capacity (largest feasible load) or demand (smallest feasible scale).
    std::optional<double> selected;
};

/// Load l runs the scenario with delta_t = 1 / l on the given stream.
SweepResult load_capacity(const ScenarioConfig& config, const DistributedEventStream& stream,
                          const ServiceLevelObjective& slo, std::span<const double> load_grid,
                          const SweepOptions& options = {});

/// Scale s multiplies the topology's capacity factor; the load is fixed.
SweepResult resource_demand(const ScenarioConfig& config, const DistributedEventStream& stream,
                            const ServiceLevelObjective& slo, double load, std::span<const double> scale_grid,
                            const SweepOptions& options = {});

}  // namespace dpm
