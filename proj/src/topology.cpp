#include "dpm/topology.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace dpm {

std::string_view to_string(TopologyKind kind) {
    switch (kind) {
        case TopologyKind::central: return "central";
        case TopologyKind::decentral: return "decentral";
        case TopologyKind::distributed: return "distributed";
    }
    return "?";
}

std::string_view to_string(NodeClass cls) {
    switch (cls) {
        case NodeClass::edge: return "edge";
        case NodeClass::fog: return "fog";
        case NodeClass::cloud: return "cloud";
    }
    return "?";
}

TopologyKind parse_topology_kind(std::string_view text) {
    if (text == "central") return TopologyKind::central;
    if (text == "decentral") return TopologyKind::decentral;
    if (text == "distributed") return TopologyKind::distributed;
    throw ConfigError("unknown topology kind '" + std::string(text) + "'");
}

NodeClass parse_node_class(std::string_view text) {
    if (text == "edge") return NodeClass::edge;
    if (text == "fog") return NodeClass::fog;
    if (text == "cloud") return NodeClass::cloud;
    throw ConfigError("unknown node class '" + std::string(text) + "'");
}

namespace {

const Hii& unique_of_kind(const ComputingNode& node, HiiKind kind) {
    const Hii* found = nullptr;
    for (const auto& h : node.instructions) {
        if (h.kind != kind) continue;
        if (found) throw TopologyError("node " + node.id + " has more than one " + std::string(to_string(kind)));
        found = &h;
    }
    if (!found) throw TopologyError("node " + node.id + " has no " + std::string(to_string(kind)) + " instruction");
    return *found;
}

std::pair<NodeId, NodeId> link_key(const NodeId& a, const NodeId& b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

const Hii& ComputingNode::compute() const { return unique_of_kind(*this, HiiKind::compute); }

const Hii& ComputingNode::store() const { return unique_of_kind(*this, HiiKind::store); }

const Hii* ComputingNode::find_send(const NodeId& peer) const {
    for (const auto& h : instructions) {
        if (h.kind == HiiKind::send && h.target == peer) return &h;
    }
    return nullptr;
}

const Hii& ComputingNode::instruction(HiiKind kind, const std::optional<NodeId>& target) const {
    switch (kind) {
        case HiiKind::compute: return compute();
        case HiiKind::store: return store();
        case HiiKind::send: {
            if (!target) throw UnreachablePeer("send from " + id + " without a target");
            if (const Hii* h = find_send(*target)) return *h;
            throw UnreachablePeer("node " + id + " has no send instruction for peer " + *target);
        }
    }
    throw TopologyError("unknown instruction kind");
}

std::vector<NodeId> ComputingNode::peers() const {
    std::vector<NodeId> out;
    for (const auto& h : instructions) {
        if (h.kind == HiiKind::send) out.push_back(*h.target);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Topology::Topology(TopologyKind kind, std::vector<ComputingNode> nodes, LinkMap links, SubnetMap subnets)
    : kind_(kind), nodes_(std::move(nodes)), subnets_(std::move(subnets)) {
    std::sort(nodes_.begin(), nodes_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i].id, i).second) throw TopologyError("duplicate node id " + nodes_[i].id);
    }
    for (const auto& [key, mult] : links) {
        auto k = link_key(key.first, key.second);
        auto [it, inserted] = links_.emplace(k, mult);
        if (!inserted && it->second != mult) {
            throw TopologyError("asymmetric link multiplier between " + k.first + " and " + k.second);
        }
    }
    for (const auto& [fog, members] : subnets_) {
        for (const auto& edge : members) {
            if (!fog_of_.emplace(edge, fog).second) {
                throw TopologyError("edge node " + edge + " belongs to more than one subnet");
            }
        }
    }
    validate();
}

void Topology::validate() const {
    if (nodes_.empty()) throw TopologyError("topology has no nodes");

    for (const auto& n : nodes_) {
        if (!(n.scale > 0.0)) throw TopologyError("node " + n.id + " must have a positive scale");
        n.compute();
        n.store();
        std::set<NodeId> targets;
        for (const auto& h : n.instructions) {
            validate_hii(h);
            if (h.kind != HiiKind::send) continue;
            if (*h.target == n.id) throw TopologyError("node " + n.id + " sends to itself");
            if (!contains(*h.target)) throw TopologyError("node " + n.id + " targets unknown node " + *h.target);
            if (!targets.insert(*h.target).second) {
                throw TopologyError("node " + n.id + " has two send instructions for " + *h.target);
            }
        }
    }
    for (const auto& [key, mult] : links_) {
        if (!contains(key.first) || !contains(key.second)) throw TopologyError("link references unknown node");
        if (!(mult > 0.0)) throw TopologyError("link multipliers must be positive");
    }

    const auto edges = edge_nodes();
    const auto fogs = fog_nodes();
    std::size_t clouds = 0;
    for (const auto& n : nodes_) clouds += n.node_class == NodeClass::cloud;
    if (edges.empty()) throw TopologyError("topology has no edge nodes");

    auto reaches = [this](const NodeId& from, const NodeId& to) { return node(from).find_send(to) != nullptr; };

    switch (kind_) {
        case TopologyKind::central: {
            if (clouds != 1) throw TopologyError("central topology needs exactly one cloud node");
            if (!fogs.empty()) throw TopologyError("central topology has no fog nodes");
            const NodeId cloud = *cloud_node();
            for (const auto& e : edges) {
                if (!reaches(e, cloud)) throw TopologyError("edge node " + e + " cannot reach the cloud node");
            }
            break;
        }
        case TopologyKind::decentral: {
            if (clouds != 0) throw TopologyError("decentral topology has no cloud node");
            if (fogs.empty()) throw TopologyError("decentral topology needs at least one fog node");
            for (const auto& [fog, members] : subnets_) {
                if (!contains(fog) || node(fog).node_class != NodeClass::fog) {
                    throw TopologyError("subnet key " + fog + " is not a fog node");
                }
                for (const auto& e : members) {
                    if (!contains(e) || node(e).node_class != NodeClass::edge) {
                        throw TopologyError("subnet member " + e + " is not an edge node");
                    }
                }
            }
            for (const auto& e : edges) {
                auto it = fog_of_.find(e);
                if (it == fog_of_.end()) throw TopologyError("edge node " + e + " belongs to no subnet");
                if (!reaches(e, it->second)) throw TopologyError("edge node " + e + " cannot reach its fog node");
            }
            for (const auto& a : fogs) {
                for (const auto& b : fogs) {
                    if (a != b && !reaches(a, b)) throw TopologyError("fog nodes " + a + " and " + b + " are not connected");
                }
            }
            break;
        }
        case TopologyKind::distributed: {
            if (clouds != 0 || !fogs.empty()) throw TopologyError("distributed topology has edge nodes only");
            for (const auto& a : edges) {
                for (const auto& b : edges) {
                    if (a != b && !reaches(a, b)) throw TopologyError("edge nodes " + a + " and " + b + " are not connected");
                }
            }
            break;
        }
    }
}

const ComputingNode& Topology::node(const NodeId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw TopologyError("unknown node " + id);
    return nodes_[it->second];
}

bool Topology::contains(const NodeId& id) const { return index_.count(id) != 0; }

std::vector<NodeId> Topology::edge_nodes() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_) {
        if (n.node_class == NodeClass::edge) out.push_back(n.id);
    }
    return out;
}

std::vector<NodeId> Topology::fog_nodes() const {
    std::vector<NodeId> out;
    for (const auto& n : nodes_) {
        if (n.node_class == NodeClass::fog) out.push_back(n.id);
    }
    return out;
}

std::optional<NodeId> Topology::cloud_node() const {
    for (const auto& n : nodes_) {
        if (n.node_class == NodeClass::cloud) return n.id;
    }
    return std::nullopt;
}

const NodeId& Topology::fog_of(const NodeId& edge) const {
    auto it = fog_of_.find(edge);
    if (it == fog_of_.end()) throw TopologyError("edge node " + edge + " belongs to no subnet");
    return it->second;
}

double Topology::link_multiplier(const NodeId& a, const NodeId& b) const {
    auto it = links_.find(link_key(a, b));
    return it == links_.end() ? 1.0 : it->second;
}

Topology build_topology(const TopologyBlueprint& bp) {
    if (!(bp.capacity_factor > 0.0)) throw TopologyError("capacity factor must be positive");

    std::vector<ComputingNode> nodes;
    Topology::LinkMap links;

    auto class_scale = [&](NodeClass c) {
        switch (c) {
            case NodeClass::edge: return bp.edge_scale;
            case NodeClass::fog: return bp.fog_scale;
            case NodeClass::cloud: return bp.cloud_scale;
        }
        return 1.0;
    };
    auto make_node = [&](const NodeId& id, NodeClass c) {
        ComputingNode n;
        n.id = id;
        n.node_class = c;
        n.scale = class_scale(c) * bp.capacity_factor;
        n.instructions.push_back({HiiKind::compute, bp.compute.time / n.scale, bp.compute.util / n.scale, {}});
        n.instructions.push_back({HiiKind::store, bp.store.time / n.scale, bp.store.util / n.scale, {}});
        nodes.push_back(std::move(n));
    };
    auto find = [&](const NodeId& id) -> ComputingNode& {
        for (auto& n : nodes) {
            if (n.id == id) return n;
        }
        throw TopologyError("unknown node " + id);
    };
    auto connect = [&](const NodeId& a, const NodeId& b, double multiplier) {
        const double time = bp.send.time * multiplier;
        const double util = bp.send.util / bp.capacity_factor;
        find(a).instructions.push_back({HiiKind::send, time, util, b});
        find(b).instructions.push_back({HiiKind::send, time, util, a});
        links[{a, b}] = multiplier;
    };

    for (const auto& e : bp.edge_nodes) make_node(e, NodeClass::edge);

    Topology::SubnetMap subnets;
    switch (bp.kind) {
        case TopologyKind::central:
            make_node(bp.cloud_node, NodeClass::cloud);
            for (const auto& e : bp.edge_nodes) connect(e, bp.cloud_node, bp.edge_cloud_link);
            break;
        case TopologyKind::decentral:
            for (const auto& [fog, members] : bp.fog_subnets) {
                make_node(fog, NodeClass::fog);
                for (const auto& e : members) connect(e, fog, bp.edge_fog_link);
            }
            for (auto a = bp.fog_subnets.begin(); a != bp.fog_subnets.end(); ++a) {
                for (auto b = std::next(a); b != bp.fog_subnets.end(); ++b) connect(a->first, b->first, bp.fog_fog_link);
            }
            subnets = bp.fog_subnets;
            break;
        case TopologyKind::distributed:
            for (std::size_t i = 0; i < bp.edge_nodes.size(); ++i) {
                for (std::size_t j = i + 1; j < bp.edge_nodes.size(); ++j) {
                    connect(bp.edge_nodes[i], bp.edge_nodes[j], bp.edge_edge_link);
                }
            }
            break;
    }
    return Topology(bp.kind, std::move(nodes), std::move(links), std::move(subnets));
}

}  // namespace dpm
