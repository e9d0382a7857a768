#pragma once

#include <string>
#include <vector>

#include "dpm/scenario.hpp"

namespace dpm {

/// Problems found by verify_outcome(); empty when the run is sound.
struct VerificationReport {
    std::vector<std::string> failures;
    std::size_t models_checked = 0;
    std::size_t steps_checked = 0;

    bool ok() const { return failures.empty(); }
};

/// Every requested model must equal the offline oracle over the events
/// delivered before the request, and every step's cost must equal, bit for
/// bit, its node's instruction applied to the step payload. Per-node cpu and network
/// utilization must add up to the summed step utilizations over delta_t.
VerificationReport verify_outcome(const ScenarioConfig& config, const DistributedEventStream& stream,
                                  const SimulationOutcome& outcome);

}  // namespace dpm
