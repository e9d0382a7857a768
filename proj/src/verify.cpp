#include "dpm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dpm {

namespace {

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

VerificationReport verify_outcome(const ScenarioConfig& config, const DistributedEventStream& stream,
                                  const SimulationOutcome& outcome) {
    VerificationReport report;
    const auto events = stream.merged();
    for (const auto& model : outcome.result.models) {
        const auto expected = offline_oracle(std::span<const Event>(events.data(), model.events_seen));
        if (!(model.dfg == expected)) {
            report.failures.push_back("model at trigger " + std::to_string(model.trace_index + 1) +
                                      " differs from the offline oracle");
        }
        ++report.models_checked;
    }

    std::map<NodeId, double> cpu_util, net_util;
    for (std::size_t i = 0; i < outcome.result.traces.size(); ++i) {
        for (const auto& step : outcome.result.traces[i].steps) {
            const auto& hii = outcome.topology.node(step.node_id).instruction(step.kind, step.target);
            const auto expected = apply_hii(hii, step.payload.p, step.payload.q);
            if (!(expected == step.cost)) {
                report.failures.push_back("step cost mismatch at trigger " + std::to_string(i + 1) + " on " +
                                          step.node_id + " (" + step.method_tag + ")");
            }
            if (step.kind == HiiKind::compute) cpu_util[step.node_id] += step.cost.util;
            if (step.kind == HiiKind::send) net_util[step.node_id] += step.cost.util;
            ++report.steps_checked;
        }
    }

    const double dt = config.run.delta_t;
    for (const auto& [id, ns] : outcome.metrics.nodes) {
        double cpu = 0.0, net = 0.0;
        for (double v : ns.cpu) cpu += v;
        for (double v : ns.network) net += v;
        if (!close(cpu * dt, cpu_util[id]) || !close(net * dt, net_util[id])) {
            report.failures.push_back("utilization totals at " + id + " do not match the trace");
        }
    }
    return report;
}

}  // namespace dpm
