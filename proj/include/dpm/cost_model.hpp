#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "dpm/types.hpp"

namespace dpm {

/// Virtual cost of one hardware interaction: elapsed time units and the
/// fraction of the resource's capacity consumed.
struct CostVector {
    double time = 0.0;
    double util = 0.0;

    friend bool operator==(const CostVector&, const CostVector&) = default;
};

enum class HiiKind { compute, store, send };

std::string_view to_string(HiiKind kind);
HiiKind parse_hii_kind(std::string_view text);

/// Hardware Interaction Instruction: the linear map (p, q) -> (p*time, q*util).
/// Send instructions are per destination and carry the peer in `target`.
struct Hii {
    HiiKind kind = HiiKind::compute;
    double time_coeff = 1.0;
    double util_coeff = 0.0;
    std::optional<NodeId> target;

    friend bool operator==(const Hii&, const Hii&) = default;
};

/// Throws TopologyError when the coefficients or the target are inconsistent.
void validate_hii(const Hii& hii);

/// Evaluates the cost function. Throws InvalidPayload for negative p or q.
CostVector apply_hii(const Hii& hii, double p, double q);

/// One component of a payload rule: constant + per_arg * len(args).
struct PayloadTerm {
    double constant = 0.0;
    double per_arg = 0.0;

    double evaluate(std::size_t arg_count) const { return constant + per_arg * static_cast<double>(arg_count); }

    static PayloadTerm fixed(double v) { return {v, 0.0}; }
    static PayloadTerm length() { return {0.0, 1.0}; }

    friend bool operator==(const PayloadTerm&, const PayloadTerm&) = default;
};

struct PayloadRule {
    PayloadTerm p;
    PayloadTerm q;

    friend bool operator==(const PayloadRule&, const PayloadRule&) = default;
};

struct Payload {
    double p = 0.0;
    double q = 0.0;

    friend bool operator==(const Payload&, const Payload&) = default;
};

/// Maps method tags to payload weights. Lookups of unknown tags throw ConfigError.
class PayloadTable {
public:
    PayloadTable() = default;

    void set(std::string tag, PayloadRule rule);
    bool contains(std::string_view tag) const;
    Payload payload(std::string_view tag, std::size_t arg_count) const;

    const std::map<std::string, PayloadRule, std::less<>>& rules() const { return rules_; }

    friend bool operator==(const PayloadTable&, const PayloadTable&) = default;

private:
    std::map<std::string, PayloadRule, std::less<>> rules_;
};

/// Method tags understood by the built-in algorithms.
namespace tags {
inline constexpr std::string_view event_log = "eventLog";
inline constexpr std::string_view follows_relation = "followsRelation";
inline constexpr std::string_view latest_timestamp = "latestTimestamp";
inline constexpr std::string_view get_latest_event = "getLatestEventWithCaseId";
inline constexpr std::string_view get_follows_relations = "getFollowsRelations";
inline constexpr std::string_view request_last_event = "requestLastEventWithCaseId";
// Not part of the baseline table; declared defaults live in default_payload_table().
inline constexpr std::string_view request_follows_relations = "requestFollowsRelations";
inline constexpr std::string_view merge_follows_relations = "mergeFollowsRelations";
inline constexpr std::string_view forward_event = "forwardEvent";
inline constexpr std::string_view predecessor_rank = "predecessorRank";
}  // namespace tags

/// The baseline table plus defaults for the forwarding, fetching, merging and
/// ranking tags used by the cloud, fog and EdgeMiner variants.
PayloadTable default_payload_table();

}  // namespace dpm
