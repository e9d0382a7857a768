#include "dpm/algorithms.hpp"

#include <algorithm>
#include <string>

namespace dpm {

std::string_view to_string(AlgorithmName name) {
    switch (name) {
        case AlgorithmName::dfg_cloud: return "dfg-cloud";
        case AlgorithmName::dfg_fog: return "dfg-fog";
        case AlgorithmName::dfg_edge: return "dfg-edge";
        case AlgorithmName::edgeminer: return "edgeminer";
    }
    return "?";
}

AlgorithmName parse_algorithm_name(std::string_view text) {
    for (auto name : all_algorithms()) {
        if (to_string(name) == text) return name;
    }
    throw ConfigError("unknown algorithm '" + std::string(text) + "'");
}

const std::vector<AlgorithmName>& all_algorithms() {
    static const std::vector<AlgorithmName> names = {AlgorithmName::dfg_cloud, AlgorithmName::dfg_fog,
                                                     AlgorithmName::dfg_edge, AlgorithmName::edgeminer};
    return names;
}

std::unique_ptr<Algorithm> make_algorithm(AlgorithmName name) {
    switch (name) {
        case AlgorithmName::dfg_cloud: return std::make_unique<DfgCloudMiner>();
        case AlgorithmName::dfg_fog: return std::make_unique<DfgFogMiner>();
        case AlgorithmName::dfg_edge: return std::make_unique<DfgEdgeMiner>();
        case AlgorithmName::edgeminer: return std::make_unique<EdgeMiner>();
    }
    throw ConfigError("unknown algorithm");
}

AlgorithmBinding binding(AlgorithmName name) {
    auto algo = make_algorithm(name);
    return {name, algo->topology_kind(), algo->method_tags()};
}

DirectlyFollowsGraph offline_oracle(std::span<const Event> ordered_events) {
    DirectlyFollowsGraph dfg;
    std::unordered_map<CaseId, Activity> last;
    for (const auto& e : ordered_events) {
        auto it = last.find(e.case_id);
        if (it != last.end()) {
            dfg.add(it->second, e.activity);
            it->second = e.activity;
        } else {
            last.emplace(e.case_id, e.activity);
        }
    }
    return dfg;
}

DirectlyFollowsGraph offline_oracle(const DistributedEventStream& stream) {
    const auto events = stream.merged();
    return offline_oracle(std::span<const Event>(events));
}

// NodeState

std::optional<Event> NodeState::append(const Event& event) {
    std::optional<Event> previous;
    auto it = latest_.find(event.case_id);
    if (it != latest_.end()) {
        previous = log_[it->second];
        it->second = log_.size();
    } else {
        latest_.emplace(event.case_id, log_.size());
    }
    log_.push_back(event);
    handed_off_.erase(event.case_id);
    return previous;
}

std::optional<CaseAnswer> NodeState::peek(const CaseId& case_id) const {
    auto it = latest_.find(case_id);
    if (it == latest_.end()) return std::nullopt;
    return CaseAnswer{log_[it->second], handed_off_.count(case_id) == 0};
}

std::optional<CaseAnswer> NodeState::hand_off(const CaseId& case_id) {
    auto answer = peek(case_id);
    if (answer && answer->live) handed_off_.insert(case_id);
    return answer;
}

// PredecessorRank

std::uint64_t PredecessorRank::count(const NodeId& peer) const {
    auto it = counts_.find(peer);
    return it == counts_.end() ? 0 : it->second;
}

std::uint64_t PredecessorRank::total() const {
    std::uint64_t n = 0;
    for (const auto& [peer, c] : counts_) n += c;
    return n;
}

std::vector<NodeId> PredecessorRank::query_order(const std::vector<NodeId>& peers) const {
    std::vector<NodeId> order = peers;
    std::stable_sort(order.begin(), order.end(), [this](const NodeId& a, const NodeId& b) {
        const auto ca = count(a);
        const auto cb = count(b);
        if (ca != cb) return ca > cb;
        return a < b;
    });
    return order;
}

// MinerBase

void MinerBase::attach(const Topology& topology) {
    topology_ = &topology;
    states_.clear();
    for (const auto& n : topology.nodes()) states_[n.id];
}

const NodeState& MinerBase::state(const NodeId& node) const {
    auto it = states_.find(node);
    if (it == states_.end()) throw TopologyError("no state for node " + node);
    return it->second;
}

NodeState& MinerBase::state_of(const NodeId& node) {
    auto it = states_.find(node);
    if (it == states_.end()) throw TopologyError("no state for node " + node);
    return it->second;
}

const Topology& MinerBase::topology() const {
    if (!topology_) throw std::logic_error("algorithm is not attached to a topology");
    return *topology_;
}

DirectlyFollowsGraph MinerBase::collect_partials(Simulation& sim, const NodeId& target,
                                                 const std::vector<NodeId>& peers) {
    std::vector<DirectlyFollowsGraph> parts;
    parts.push_back(sim.store(target, tags::get_follows_relations, 1, [&] { return state_of(target).partial(); }));
    for (const auto& peer : peers) {
        parts.push_back(sim.fetch(
            target, peer, tags::request_follows_relations,
            [&] { return sim.store(peer, tags::get_follows_relations, 1, [&] { return state_of(peer).partial(); }); },
            [](const DirectlyFollowsGraph& d) { return d.size(); }));
    }
    std::size_t edges = 0;
    for (const auto& p : parts) edges += p.size();
    return sim.compute(target, tags::merge_follows_relations, edges, [&] {
        DirectlyFollowsGraph merged;
        for (const auto& p : parts) merged = merge_dfg(merged, p);
        return merged;
    });
}

std::optional<CaseAnswer> MinerBase::answer_case_query(Simulation& sim, const NodeId& peer, const CaseId& case_id) {
    return sim.store(peer, tags::get_latest_event, 1, [&] { return state_of(peer).hand_off(case_id); });
}

namespace {

std::optional<Event> latest_of(const std::vector<Event>& candidates) {
    if (candidates.empty()) return std::nullopt;
    return *std::max_element(candidates.begin(), candidates.end(),
                             [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
}

}  // namespace

// DfgCloudMiner

std::string_view DfgCloudMiner::name() const { return to_string(AlgorithmName::dfg_cloud); }

std::vector<std::string_view> DfgCloudMiner::method_tags() const {
    return {tags::forward_event, tags::event_log, tags::follows_relation, tags::get_follows_relations};
}

void DfgCloudMiner::on_event(Simulation& sim, const Event& event) {
    const NodeId cloud = *topology().cloud_node();
    sim.send(event.location, cloud, tags::forward_event, 1, [&] {
        auto previous = sim.store(cloud, tags::event_log, 1, [&] { return state_of(cloud).append(event); });
        if (previous) {
            sim.store(cloud, tags::follows_relation, 1,
                      [&] { state_of(cloud).partial().add(previous->activity, event.activity); });
        }
    });
}

NodeId DfgCloudMiner::request_target(std::size_t) const { return *topology().cloud_node(); }

DirectlyFollowsGraph DfgCloudMiner::on_model_request(Simulation& sim, const NodeId& target) {
    return sim.store(target, tags::get_follows_relations, 1, [&] { return state_of(target).partial(); });
}

// DfgFogMiner

std::string_view DfgFogMiner::name() const { return to_string(AlgorithmName::dfg_fog); }

std::vector<std::string_view> DfgFogMiner::method_tags() const {
    return {tags::forward_event,    tags::event_log,          tags::request_last_event,        tags::get_latest_event,
            tags::latest_timestamp, tags::follows_relation,   tags::get_follows_relations,     tags::request_follows_relations,
            tags::merge_follows_relations};
}

void DfgFogMiner::on_event(Simulation& sim, const Event& event) {
    const NodeId fog = topology().fog_of(event.location);
    sim.send(event.location, fog, tags::forward_event, 1, [&] {
        std::vector<Event> candidates;
        bool live = false;
        sim.store(fog, tags::event_log, 1, [&] {
            auto& st = state_of(fog);
            if (auto local = st.peek(event.case_id)) {
                candidates.push_back(local->event);
                live = local->live;
            }
            st.append(event);
        });
        if (!live) {
            for (const auto& other : topology().fog_nodes()) {
                if (other == fog) continue;
                auto answer = sim.send(fog, other, tags::request_last_event, 1,
                                       [&] { return answer_case_query(sim, other, event.case_id); });
                if (answer) candidates.push_back(answer->event);
            }
        }
        auto latest = sim.compute(fog, tags::latest_timestamp, candidates.size(), [&] { return latest_of(candidates); });
        if (latest) {
            sim.store(fog, tags::follows_relation, 1,
                      [&] { state_of(fog).partial().add(latest->activity, event.activity); });
        }
    });
}

NodeId DfgFogMiner::request_target(std::size_t) const { return topology().fog_nodes().front(); }

DirectlyFollowsGraph DfgFogMiner::on_model_request(Simulation& sim, const NodeId& target) {
    std::vector<NodeId> others;
    for (const auto& f : topology().fog_nodes()) {
        if (f != target) others.push_back(f);
    }
    return collect_partials(sim, target, others);
}

// DfgEdgeMiner

std::string_view DfgEdgeMiner::name() const { return to_string(AlgorithmName::dfg_edge); }

std::vector<std::string_view> DfgEdgeMiner::method_tags() const {
    return {tags::event_log,           tags::request_last_event,        tags::get_latest_event,
            tags::latest_timestamp,    tags::follows_relation,          tags::get_follows_relations,
            tags::request_follows_relations, tags::merge_follows_relations};
}

void DfgEdgeMiner::on_event(Simulation& sim, const Event& event) {
    const NodeId& node = event.location;
    std::vector<Event> candidates;
    // The indexed insert hands back the local predecessor, if any.
    if (auto local = sim.store(node, tags::event_log, 1, [&] { return state_of(node).append(event); })) {
        candidates.push_back(*local);
    }
    for (const auto& peer : topology().node(node).peers()) {
        auto answer = sim.send(node, peer, tags::request_last_event, 1,
                               [&] { return answer_case_query(sim, peer, event.case_id); });
        if (answer) candidates.push_back(answer->event);
    }
    auto latest = sim.compute(node, tags::latest_timestamp, candidates.size(), [&] { return latest_of(candidates); });
    if (latest) {
        sim.store(node, tags::follows_relation, 1,
                  [&] { state_of(node).partial().add(latest->activity, event.activity); });
    }
}

NodeId DfgEdgeMiner::request_target(std::size_t request_index) const {
    const auto edges = topology().edge_nodes();
    return edges[request_index % edges.size()];
}

DirectlyFollowsGraph DfgEdgeMiner::on_model_request(Simulation& sim, const NodeId& target) {
    return collect_partials(sim, target, topology().node(target).peers());
}

// EdgeMiner

std::string_view EdgeMiner::name() const { return to_string(AlgorithmName::edgeminer); }

std::vector<std::string_view> EdgeMiner::method_tags() const {
    return {tags::get_latest_event,        tags::event_log,          tags::request_last_event,
            tags::latest_timestamp,        tags::follows_relation,   tags::predecessor_rank,
            tags::get_follows_relations,   tags::request_follows_relations, tags::merge_follows_relations};
}

void EdgeMiner::attach(const Topology& topology) {
    MinerBase::attach(topology);
    ranks_.clear();
    for (const auto& e : topology.edge_nodes()) ranks_[e];
}

const PredecessorRank& EdgeMiner::rank(const NodeId& node) const {
    auto it = ranks_.find(node);
    if (it == ranks_.end()) throw TopologyError("no rank table for node " + node);
    return it->second;
}

void EdgeMiner::on_event(Simulation& sim, const Event& event) {
    const NodeId& node = event.location;
    auto local = sim.store(node, tags::get_latest_event, 1, [&] { return state_of(node).peek(event.case_id); });
    sim.store(node, tags::event_log, 1, [&] { state_of(node).append(event); });

    std::vector<Event> candidates;
    std::optional<NodeId> holder;
    if (local) {
        candidates.push_back(local->event);
        if (local->live) holder = node;
    }
    if (!holder) {
        // A stale reply means the case moved on; keep asking until the live
        // holder answers or every peer has been asked.
        for (const auto& peer : ranks_.at(node).query_order(topology().node(node).peers())) {
            auto answer = sim.send(node, peer, tags::request_last_event, 1,
                                   [&] { return answer_case_query(sim, peer, event.case_id); });
            if (!answer) continue;
            candidates.push_back(answer->event);
            if (answer->live) {
                holder = peer;
                break;
            }
        }
    }
    auto latest = sim.compute(node, tags::latest_timestamp, candidates.size(), [&] { return latest_of(candidates); });
    if (latest) {
        sim.store(node, tags::follows_relation, 1,
                  [&] { state_of(node).partial().add(latest->activity, event.activity); });
    }
    if (holder) {
        sim.store(node, tags::predecessor_rank, 1, [&] { ranks_.at(node).record(*holder); });
    }
}

NodeId EdgeMiner::request_target(std::size_t request_index) const {
    const auto edges = topology().edge_nodes();
    return edges[request_index % edges.size()];
}

DirectlyFollowsGraph EdgeMiner::on_model_request(Simulation& sim, const NodeId& target) {
    return collect_partials(sim, target, topology().node(target).peers());
}

}  // namespace dpm
