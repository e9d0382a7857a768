#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "dpm/cost_model.hpp"
#include "dpm/types.hpp"

namespace dpm {

/// Where the process model lives: one cloud aggregator, one aggregator per
/// subnet, or nowhere in particular (edge nodes only).
enum class TopologyKind { central, decentral, distributed };
enum class NodeClass { edge, fog, cloud };

std::string_view to_string(TopologyKind kind);
std::string_view to_string(NodeClass cls);
TopologyKind parse_topology_kind(std::string_view text);
NodeClass parse_node_class(std::string_view text);

/// A node is nothing but the hardware instructions it offers: one compute,
/// one store, and one send per reachable peer.
struct ComputingNode {
    NodeId id;
    NodeClass node_class = NodeClass::edge;
    /// Capability relative to a baseline edge node. Informational once the
    /// instructions are built.
    double scale = 1.0;
    std::vector<Hii> instructions;

    const Hii& compute() const;
    const Hii& store() const;
    const Hii* find_send(const NodeId& peer) const;
    /// Resolves the instruction for a step; throws UnreachablePeer for a
    /// send without a matching instruction.
    const Hii& instruction(HiiKind kind, const std::optional<NodeId>& target) const;
    std::vector<NodeId> peers() const;
};

class Topology {
public:
    using LinkMap = std::map<std::pair<NodeId, NodeId>, double>;
    using SubnetMap = std::map<NodeId, std::vector<NodeId>>;

    /// Validates every structural invariant of `kind`; throws TopologyError.
    Topology(TopologyKind kind, std::vector<ComputingNode> nodes, LinkMap links = {}, SubnetMap subnets = {});

    TopologyKind kind() const { return kind_; }
    const std::vector<ComputingNode>& nodes() const { return nodes_; }
    const ComputingNode& node(const NodeId& id) const;
    bool contains(const NodeId& id) const;

    /// Sorted by id.
    std::vector<NodeId> edge_nodes() const;
    std::vector<NodeId> fog_nodes() const;
    std::optional<NodeId> cloud_node() const;
    /// Fog aggregator of an edge node in a decentral topology.
    const NodeId& fog_of(const NodeId& edge) const;

    const LinkMap& links() const { return links_; }
    /// Symmetric lookup; 1.0 when no multiplier was declared.
    double link_multiplier(const NodeId& a, const NodeId& b) const;
    const SubnetMap& subnets() const { return subnets_; }

private:
    void validate() const;

    TopologyKind kind_;
    std::vector<ComputingNode> nodes_;
    std::map<NodeId, std::size_t> index_;
    LinkMap links_;
    SubnetMap subnets_;
    std::map<NodeId, NodeId> fog_of_;
};

struct CostCoefficients {
    double time = 1.0;
    double util = 0.0;

    friend bool operator==(const CostCoefficients&, const CostCoefficients&) = default;
};

/// Declarative description from which a valid Topology is derived.
///
/// Compute and store coefficients of a node are the baseline divided by its
/// effective scale (class scale times `capacity_factor`). Send time is the
/// baseline times the link multiplier of the node-class pair; send
/// utilization is the baseline divided by `capacity_factor`, so a uniform
/// capacity factor also provisions network capacity.
struct TopologyBlueprint {
    TopologyKind kind = TopologyKind::distributed;
    std::vector<NodeId> edge_nodes;
    /// Decentral only: fog node -> its edge nodes.
    std::map<NodeId, std::vector<NodeId>> fog_subnets;
    /// Central only.
    NodeId cloud_node = "cloud";

    CostCoefficients compute{2.0, 0.01};
    CostCoefficients store{3.0, 0.01};
    CostCoefficients send{10.0, 0.05};

    double edge_scale = 1.0;
    double fog_scale = 1.5;
    double cloud_scale = 2.0;

    double edge_edge_link = 1.0;
    double edge_fog_link = 1.5;
    double edge_cloud_link = 5.0;
    double fog_fog_link = 1.5;

    double capacity_factor = 1.0;

    friend bool operator==(const TopologyBlueprint&, const TopologyBlueprint&) = default;
};

Topology build_topology(const TopologyBlueprint& blueprint);

}  // namespace dpm
