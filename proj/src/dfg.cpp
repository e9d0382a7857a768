#include "dpm/dfg.hpp"

namespace dpm {

void DirectlyFollowsGraph::add(const Activity& from, const Activity& to, std::uint64_t count) {
    if (count == 0) return;
    edges_[{from, to}] += count;
}

std::uint64_t DirectlyFollowsGraph::count(const Activity& from, const Activity& to) const {
    auto it = edges_.find({from, to});
    return it == edges_.end() ? 0 : it->second;
}

std::uint64_t DirectlyFollowsGraph::total() const {
    std::uint64_t n = 0;
    for (const auto& [edge, c] : edges_) n += c;
    return n;
}

DirectlyFollowsGraph merge_dfg(const DirectlyFollowsGraph& a, const DirectlyFollowsGraph& b) {
    DirectlyFollowsGraph out = a;
    for (const auto& [edge, c] : b.edges()) out.add(edge.first, edge.second, c);
    return out;
}

}  // namespace dpm
