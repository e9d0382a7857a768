#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dpm/dfg.hpp"
#include "dpm/engine.hpp"
#include "dpm/topology.hpp"
#include "dpm/types.hpp"

namespace dpm {

enum class AlgorithmName { dfg_cloud, dfg_fog, dfg_edge, edgeminer };

std::string_view to_string(AlgorithmName name);
AlgorithmName parse_algorithm_name(std::string_view text);
const std::vector<AlgorithmName>& all_algorithms();

struct AlgorithmBinding {
    AlgorithmName name;
    TopologyKind topology_kind;
    std::vector<std::string_view> method_tags;
};

AlgorithmBinding binding(AlgorithmName name);
std::unique_ptr<Algorithm> make_algorithm(AlgorithmName name);

/// Centralized ground truth: merge all local streams by timestamp and count
/// adjacent activity pairs within each case.
DirectlyFollowsGraph offline_oracle(const DistributedEventStream& stream);
DirectlyFollowsGraph offline_oracle(std::span<const Event> ordered_events);

/// Reply to a "latest event of case" query. `live` is false once the holder
/// has handed the case to a successor node, i.e. its event is known stale.
struct CaseAnswer {
    Event event;
    bool live = true;
};

/// Event log, per-case index and partial model of one node.
class NodeState {
public:
    /// Appends and returns the previous local event of the same case. The
    /// node becomes the live holder of the case.
    std::optional<Event> append(const Event& event);
    std::optional<CaseAnswer> peek(const CaseId& case_id) const;
    /// Answers a peer's query; a live answer marks the case as handed off.
    std::optional<CaseAnswer> hand_off(const CaseId& case_id);

    const std::vector<Event>& log() const { return log_; }
    const DirectlyFollowsGraph& partial() const { return partial_; }
    DirectlyFollowsGraph& partial() { return partial_; }

private:
    std::vector<Event> log_;
    std::unordered_map<CaseId, std::size_t> latest_;
    std::unordered_set<CaseId> handed_off_;
    DirectlyFollowsGraph partial_;
};

/// EdgeMiner metadata: how often each peer held the predecessor event.
class PredecessorRank {
public:
    void record(const NodeId& peer) { ++counts_[peer]; }
    std::uint64_t count(const NodeId& peer) const;
    std::uint64_t total() const;
    const std::map<NodeId, std::uint64_t>& counts() const { return counts_; }

    /// Peers by descending count, ties by ascending id; unranked peers last
    /// in ascending id order.
    std::vector<NodeId> query_order(const std::vector<NodeId>& peers) const;

private:
    std::map<NodeId, std::uint64_t> counts_;
};

class MinerBase : public Algorithm {
public:
    void attach(const Topology& topology) override;
    const NodeState& state(const NodeId& node) const;

protected:
    NodeState& state_of(const NodeId& node);
    const Topology& topology() const;
    /// Local partial model plus one fetch per peer, merged at `target`.
    DirectlyFollowsGraph collect_partials(Simulation& sim, const NodeId& target, const std::vector<NodeId>& peers);
    /// Remote half of a "latest event of case" request.
    std::optional<CaseAnswer> answer_case_query(Simulation& sim, const NodeId& peer, const CaseId& case_id);

private:
    const Topology* topology_ = nullptr;
    std::map<NodeId, NodeState> states_;
};

/// Edge nodes forward every event to the cloud node, which owns the model.
class DfgCloudMiner final : public MinerBase {
public:
    std::string_view name() const override;
    TopologyKind topology_kind() const override { return TopologyKind::central; }
    std::vector<std::string_view> method_tags() const override;
    void on_event(Simulation& sim, const Event& event) override;
    NodeId request_target(std::size_t request_index) const override;
    DirectlyFollowsGraph on_model_request(Simulation& sim, const NodeId& target) override;
};

/// Edge nodes forward events to their subnet's fog node. A fog node that is
/// not the live holder of a case asks every other fog for it.
class DfgFogMiner final : public MinerBase {
public:
    std::string_view name() const override;
    TopologyKind topology_kind() const override { return TopologyKind::decentral; }
    std::vector<std::string_view> method_tags() const override;
    void on_event(Simulation& sim, const Event& event) override;
    NodeId request_target(std::size_t request_index) const override;
    DirectlyFollowsGraph on_model_request(Simulation& sim, const NodeId& target) override;
};

/// Baseline distributed discovery: every event queries every other edge node
/// for the latest event of its case.
class DfgEdgeMiner final : public MinerBase {
public:
    std::string_view name() const override;
    TopologyKind topology_kind() const override { return TopologyKind::distributed; }
    std::vector<std::string_view> method_tags() const override;
    void on_event(Simulation& sim, const Event& event) override;
    NodeId request_target(std::size_t request_index) const override;
    DirectlyFollowsGraph on_model_request(Simulation& sim, const NodeId& target) override;
};

/// Queries peers one at a time, most frequent predecessor holder first, and
/// stops at the live holder of the case.
class EdgeMiner final : public MinerBase {
public:
    std::string_view name() const override;
    TopologyKind topology_kind() const override { return TopologyKind::distributed; }
    std::vector<std::string_view> method_tags() const override;
    void attach(const Topology& topology) override;
    void on_event(Simulation& sim, const Event& event) override;
    NodeId request_target(std::size_t request_index) const override;
    DirectlyFollowsGraph on_model_request(Simulation& sim, const NodeId& target) override;

    const PredecessorRank& rank(const NodeId& node) const;

private:
    std::map<NodeId, PredecessorRank> ranks_;
};

}  // namespace dpm
