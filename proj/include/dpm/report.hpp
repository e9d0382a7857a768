#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "dpm/algorithms.hpp"
#include "dpm/metrics.hpp"
#include "dpm/scenario.hpp"
#include "dpm/sweep.hpp"

namespace dpm {

/// Fixed nine-decimal rendering used by every CSV writer.
std::string format_number(double value);

/// trigger_index, trigger_kind, processing_time, processing_time_mean, then
/// per node (ascending id): <node>_cpu_util, <node>_mem_util,
/// <node>_net_util, <node>_cpu_mean, <node>_mem_mean, <node>_net_mean.
void write_metrics_csv(std::ostream& out, const MetricsSeries& metrics);

/// kind,from,to,value rows: one `edge` row per DFG edge of the last model
/// request, then `total` rows per node and resource, then the summed
/// processing time.
void write_summary_csv(std::ostream& out, const SimulationOutcome& outcome);

/// One row per step: trigger_index,node_id,kind,target,method_tag,p,q,time,util.
void write_traces_csv(std::ostream& out, const std::vector<DistributedTrace>& traces);

/// System-wide running means for plotting.
void write_plot_csv(std::ostream& out, const MetricsSeries& metrics);

/// grid_value,slo_resource,threshold,satisfied,peak_utilization.
void write_sweep_csv(std::ostream& out, const SweepResult& result, const ServiceLevelObjective& slo);

/// Side-by-side running means keyed by trigger index.
void write_compare_csv(std::ostream& out, const std::vector<std::pair<std::string, MetricsSeries>>& runs);

struct TrendCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Expected qualitative ordering between the four discovery variants. Checks
/// whose algorithms are missing from `runs` are skipped.
std::vector<TrendCheck> trend_report(const std::vector<std::pair<AlgorithmName, MetricsSeries>>& runs);

}  // namespace dpm
