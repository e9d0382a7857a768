#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dpm/types.hpp"

namespace dpm {

/// Declarative process model used to synthesize distributed event streams.
struct ProcessModelSpec {
    struct Step {
        Activity activity;
        double probability = 0.0;

        friend bool operator==(const Step&, const Step&) = default;
    };

    /// Activity label and the location that logs it, in declaration order.
    std::vector<std::pair<Activity, NodeId>> activities;
    std::map<Activity, std::vector<Step>> transitions;
    std::vector<Step> start_activities;
    std::set<Activity> end_activities;
    /// Probability that a case is cut short after any non-final event.
    double error_termination_prob = 0.0;
    /// A new case starts every `case_arrival` emitted events.
    std::uint64_t case_arrival = 1;
    std::optional<std::uint64_t> max_cases;

    const NodeId& location_of(const Activity& activity) const;
    std::vector<NodeId> locations() const;

    friend bool operator==(const ProcessModelSpec&, const ProcessModelSpec&) = default;
};

/// Throws GenerationError when probabilities do not sum to one, an activity
/// is unmapped, or (without error terminations) an end activity is not
/// reachable from every reachable activity.
void validate_model(const ProcessModelSpec& model);

/// Emits exactly `n_events` events with timestamps 1..n_events. Active cases
/// are served round-robin; a new case joins every `case_arrival` emissions
/// (or immediately, if none is active).
///
/// Random draws use std::mt19937_64 seeded with `seed`; a draw u in [0,1) is
/// the top 53 bits of one engine output scaled by 2^-53. Both are fixed by
/// the C++ standard, so streams are identical across platforms.
DistributedEventStream generate(const ProcessModelSpec& model, std::uint64_t n_events, std::uint64_t seed);

/// The seven-station smart factory line, stations mapped to nodes n0..n6.
struct FactoryModelOptions {
    double error_termination_prob = 0.05;
    /// Self-loop probability on quality control (rework / waiting).
    double quality_loop_prob = 0.1;
    std::uint64_t case_arrival = 5;
};

ProcessModelSpec builtin_factory_model(const FactoryModelOptions& options = {});

/// Factory line with no errors and no rework: every case visits all seven
/// stations in order.
ProcessModelSpec linear_factory_model(std::uint64_t case_arrival = 5);

}  // namespace dpm
