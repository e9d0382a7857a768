#include "dpm/cost_model.hpp"

#include <string>

namespace dpm {

std::string_view to_string(HiiKind kind) {
    switch (kind) {
        case HiiKind::compute: return "compute";
        case HiiKind::store: return "store";
        case HiiKind::send: return "send";
    }
    return "?";
}

HiiKind parse_hii_kind(std::string_view text) {
    if (text == "compute") return HiiKind::compute;
    if (text == "store") return HiiKind::store;
    if (text == "send") return HiiKind::send;
    throw ConfigError("unknown instruction kind '" + std::string(text) + "'");
}

void validate_hii(const Hii& hii) {
    if (!(hii.time_coeff > 0.0)) {
        throw TopologyError("instruction time coefficient must be positive");
    }
    if (!(hii.util_coeff >= 0.0 && hii.util_coeff <= 1.0)) {
        throw TopologyError("instruction utilization coefficient must lie in [0, 1]");
    }
    if ((hii.kind == HiiKind::send) != hii.target.has_value()) {
        throw TopologyError("send instructions and only send instructions carry a target");
    }
}

CostVector apply_hii(const Hii& hii, double p, double q) {
    if (p < 0.0 || q < 0.0) {
        throw InvalidPayload("payload must be non-negative, got (" + std::to_string(p) + ", " + std::to_string(q) +
                             ")");
    }
    return {p * hii.time_coeff, q * hii.util_coeff};
}

void PayloadTable::set(std::string tag, PayloadRule rule) { rules_[std::move(tag)] = rule; }

bool PayloadTable::contains(std::string_view tag) const { return rules_.find(tag) != rules_.end(); }

Payload PayloadTable::payload(std::string_view tag, std::size_t arg_count) const {
    auto it = rules_.find(tag);
    if (it == rules_.end()) {
        throw ConfigError("no payload rule for method tag '" + std::string(tag) + "'");
    }
    return {it->second.p.evaluate(arg_count), it->second.q.evaluate(arg_count)};
}

PayloadTable default_payload_table() {
    using T = PayloadTerm;
    PayloadTable t;
    t.set(std::string(tags::latest_timestamp), {T::length(), T::length()});
    t.set(std::string(tags::event_log), {T::fixed(1), T::fixed(1)});
    t.set(std::string(tags::follows_relation), {T::fixed(1), T::fixed(2)});
    t.set(std::string(tags::get_latest_event), {T::fixed(1), T::fixed(0)});
    t.set(std::string(tags::get_follows_relations), {T::fixed(1), T::fixed(0)});
    t.set(std::string(tags::request_last_event), {T::fixed(1), T::fixed(1)});

    t.set(std::string(tags::request_follows_relations), {T::fixed(1), T::fixed(1)});
    t.set(std::string(tags::forward_event), {T::fixed(1), T::fixed(1)});
    t.set(std::string(tags::merge_follows_relations), {T::length(), T::length()});
    t.set(std::string(tags::predecessor_rank), {T::fixed(1), T::fixed(1)});
    return t;
}

}  // namespace dpm
