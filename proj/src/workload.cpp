#include "dpm/workload.hpp"

#include <cmath>
#include <deque>
#include <random>
#include <string>

namespace dpm {

const NodeId& ProcessModelSpec::location_of(const Activity& activity) const {
    for (const auto& [a, loc] : activities) {
        if (a == activity) return loc;
    }
    throw GenerationError("activity '" + activity + "' has no location");
}

std::vector<NodeId> ProcessModelSpec::locations() const {
    std::set<NodeId> locs;
    for (const auto& [a, loc] : activities) locs.insert(loc);
    return {locs.begin(), locs.end()};
}

namespace {

constexpr double kProbabilityTolerance = 1e-9;

void check_distribution(const std::vector<ProcessModelSpec::Step>& steps, const std::string& what) {
    double sum = 0.0;
    for (const auto& s : steps) {
        if (s.probability < 0.0) throw GenerationError(what + " has a negative probability");
        sum += s.probability;
    }
    if (std::abs(sum - 1.0) > kProbabilityTolerance) {
        throw GenerationError(what + " probabilities sum to " + std::to_string(sum) + ", not 1");
    }
}

class UniformSource {
public:
    explicit UniformSource(std::uint64_t seed) : engine_(seed) {}

    double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

const Activity& draw(const std::vector<ProcessModelSpec::Step>& steps, double u) {
    double acc = 0.0;
    for (const auto& s : steps) {
        acc += s.probability;
        if (u < acc && s.probability > 0.0) return s.activity;
    }
    // Rounding can leave u just above the accumulated sum.
    for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
        if (it->probability > 0.0) return it->activity;
    }
    throw GenerationError("empty distribution");
}

struct ActiveCase {
    CaseId id;
    Activity next;
};

}  // namespace

void validate_model(const ProcessModelSpec& model) {
    if (model.activities.empty()) throw GenerationError("process model has no activities");
    std::set<Activity> known;
    for (const auto& [a, loc] : model.activities) {
        if (loc.empty()) throw GenerationError("activity '" + a + "' has an empty location");
        if (!known.insert(a).second) throw GenerationError("activity '" + a + "' is mapped to more than one location");
    }
    auto require_known = [&](const Activity& a) {
        if (!known.count(a)) throw GenerationError("activity '" + a + "' is not declared");
    };

    if (model.start_activities.empty()) throw GenerationError("process model has no start activity");
    check_distribution(model.start_activities, "start activity");
    for (const auto& s : model.start_activities) require_known(s.activity);
    for (const auto& a : model.end_activities) require_known(a);

    for (const auto& [from, steps] : model.transitions) {
        require_known(from);
        for (const auto& s : steps) require_known(s.activity);
        check_distribution(steps, "transitions of '" + from + "'");
    }
    for (const auto& a : known) {
        if (!model.end_activities.count(a) && !model.transitions.count(a)) {
            throw GenerationError("non-final activity '" + a + "' has no outgoing transitions");
        }
    }
    if (!(model.error_termination_prob >= 0.0 && model.error_termination_prob < 1.0)) {
        throw GenerationError("error termination probability must lie in [0, 1)");
    }
    if (model.case_arrival == 0) throw GenerationError("case arrival cadence must be at least 1");
    if (model.max_cases && *model.max_cases == 0) throw GenerationError("max_cases must be at least 1");

    // Without error terminations every reachable activity must be able to
    // reach an end activity, or some case never finishes.
    std::set<Activity> can_finish(model.end_activities.begin(), model.end_activities.end());
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& [from, steps] : model.transitions) {
            if (can_finish.count(from)) continue;
            for (const auto& s : steps) {
                if (s.probability > 0.0 && can_finish.count(s.activity)) {
                    can_finish.insert(from);
                    grew = true;
                    break;
                }
            }
        }
    }
    std::set<Activity> reachable;
    std::deque<Activity> frontier;
    for (const auto& s : model.start_activities) {
        if (s.probability > 0.0 && reachable.insert(s.activity).second) frontier.push_back(s.activity);
    }
    while (!frontier.empty()) {
        const Activity a = frontier.front();
        frontier.pop_front();
        if (model.end_activities.count(a)) continue;
        auto it = model.transitions.find(a);
        if (it == model.transitions.end()) continue;
        for (const auto& s : it->second) {
            if (s.probability > 0.0 && reachable.insert(s.activity).second) frontier.push_back(s.activity);
        }
    }
    if (model.error_termination_prob == 0.0) {
        for (const auto& a : reachable) {
            if (!can_finish.count(a)) throw GenerationError("no end activity is reachable from '" + a + "'");
        }
    }
}

DistributedEventStream generate(const ProcessModelSpec& model, std::uint64_t n_events, std::uint64_t seed) {
    if (n_events == 0) throw GenerationError("n_events must be at least 1");
    validate_model(model);

    UniformSource rng(seed);
    std::vector<Event> events;
    events.reserve(n_events);
    std::vector<ActiveCase> active;
    std::size_t cursor = 0;
    std::uint64_t started = 0;

    auto start_case = [&]() {
        if (model.max_cases && started >= *model.max_cases) return false;
        active.push_back({"c" + std::to_string(started), draw(model.start_activities, rng.next())});
        ++started;
        return true;
    };

    for (std::uint64_t emitted = 0; emitted < n_events; ++emitted) {
        if (emitted % model.case_arrival == 0) start_case();
        if (active.empty() && !start_case()) {
            throw GenerationError("case limit reached after " + std::to_string(emitted) + " of " +
                                  std::to_string(n_events) + " events");
        }
        if (cursor >= active.size()) cursor = 0;

        ActiveCase& c = active[cursor];
        events.push_back({c.id, c.next, emitted + 1, model.location_of(c.next)});

        bool finished = model.end_activities.count(c.next) != 0;
        if (!finished && model.error_termination_prob > 0.0) {
            finished = rng.next() < model.error_termination_prob;
        }
        if (!finished) {
            c.next = draw(model.transitions.at(c.next), rng.next());
            ++cursor;
        } else {
            active.erase(active.begin() + static_cast<std::ptrdiff_t>(cursor));
        }
    }
    return DistributedEventStream::from_events(events);
}

namespace {

const std::vector<Activity>& factory_stations() {
    static const std::vector<Activity> stations = {"goods delivery", "material preparation", "assembly line setup",
                                                   "assembling",     "quality control",      "packaging",
                                                   "shipping"};
    return stations;
}

}  // namespace

ProcessModelSpec builtin_factory_model(const FactoryModelOptions& options) {
    const auto& stations = factory_stations();
    ProcessModelSpec m;
    for (std::size_t i = 0; i < stations.size(); ++i) m.activities.emplace_back(stations[i], "n" + std::to_string(i));

    const std::size_t qc = 4;
    for (std::size_t i = 0; i + 1 < stations.size(); ++i) {
        if (i == qc && options.quality_loop_prob > 0.0) {
            m.transitions[stations[i]] = {{stations[i], options.quality_loop_prob},
                                          {stations[i + 1], 1.0 - options.quality_loop_prob}};
        } else {
            m.transitions[stations[i]] = {{stations[i + 1], 1.0}};
        }
    }
    m.start_activities = {{stations.front(), 1.0}};
    m.end_activities = {stations.back()};
    m.error_termination_prob = options.error_termination_prob;
    m.case_arrival = options.case_arrival;
    return m;
}

ProcessModelSpec linear_factory_model(std::uint64_t case_arrival) {
    return builtin_factory_model({0.0, 0.0, case_arrival});
}

}  // namespace dpm
