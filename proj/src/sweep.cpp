#include "dpm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace dpm {

namespace {

using PointConfig = std::function<ScenarioConfig(double)>;

SweepPoint evaluate_point(const PointConfig& make, const DistributedEventStream& stream,
                          const ServiceLevelObjective& slo, double grid_value) {
    auto outcome = simulate(make(grid_value), stream);
    SweepPoint p;
    p.grid_value = grid_value;
    p.satisfied = evaluate_slo(slo, outcome.metrics);
    p.peak_utilization = peak_utilization(slo, outcome.metrics);
    p.metrics = std::move(outcome.metrics);
    return p;
}

std::vector<SweepPoint> evaluate_all(const PointConfig& make, const DistributedEventStream& stream,
                                     const ServiceLevelObjective& slo, std::span<const double> grid, unsigned jobs) {
    std::vector<SweepPoint> points(grid.size());
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(grid.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < grid.size(); ++i) points[i] = evaluate_point(make, stream, slo, grid[i]);
        return points;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < grid.size(); i = next++) {
                try {
                    points[i] = evaluate_point(make, stream, slo, grid[i]);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return points;
}

enum class Goal { capacity, demand };

SweepResult sweep(const PointConfig& make, const DistributedEventStream& stream, const ServiceLevelObjective& slo,
                  std::span<const double> grid, const SweepOptions& options, Goal goal) {
    validate_grid(grid);
    validate_slo(slo);
    auto search = goal == Goal::capacity ? capacity_index : demand_index;

    SweepResult result;
    if (options.mode == SearchMode::linear) {
        result.points = evaluate_all(make, stream, slo, grid, options.jobs);
        auto idx = search(grid.size(), [&](std::size_t i) { return result.points[i].satisfied; }, SearchMode::linear);
        if (idx) result.selected = grid[*idx];
        return result;
    }

    std::map<std::size_t, SweepPoint> probed;
    auto idx = search(
        grid.size(),
        [&](std::size_t i) {
            auto it = probed.find(i);
            if (it == probed.end()) it = probed.emplace(i, evaluate_point(make, stream, slo, grid[i])).first;
            return it->second.satisfied;
        },
        SearchMode::bisect);
    for (auto& [i, p] : probed) result.points.push_back(std::move(p));
    if (idx) result.selected = grid[*idx];
    return result;
}

}  // namespace

SweepResult load_capacity(const ScenarioConfig& config, const DistributedEventStream& stream,
                          const ServiceLevelObjective& slo, std::span<const double> load_grid,
                          const SweepOptions& options) {
    auto make = [&config](double load) {
        ScenarioConfig c = config;
        c.run.delta_t = 1.0 / load;
        return c;
    };
    return sweep(make, stream, slo, load_grid, options, Goal::capacity);
}

SweepResult resource_demand(const ScenarioConfig& config, const DistributedEventStream& stream,
                            const ServiceLevelObjective& slo, double load, std::span<const double> scale_grid,
                            const SweepOptions& options) {
    if (!(load > 0.0)) throw ConfigError("load must be positive");
    auto make = [&config, load](double scale) {
        ScenarioConfig c = config;
        c.run.delta_t = 1.0 / load;
        c.topology.capacity_factor = config.topology.capacity_factor * scale;
        return c;
    };
    return sweep(make, stream, slo, scale_grid, options, Goal::demand);
}

}  // namespace dpm
