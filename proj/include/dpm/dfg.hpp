#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "dpm/types.hpp"

namespace dpm {

/// Counted set of (predecessor activity, successor activity) pairs.
/// Only strictly positive counts are stored; a missing pair counts zero.
class DirectlyFollowsGraph {
public:
    using Edge = std::pair<Activity, Activity>;
    using EdgeMap = std::map<Edge, std::uint64_t>;

    void add(const Activity& from, const Activity& to, std::uint64_t count = 1);
    std::uint64_t count(const Activity& from, const Activity& to) const;

    const EdgeMap& edges() const { return edges_; }
    std::size_t size() const { return edges_.size(); }
    bool empty() const { return edges_.empty(); }
    std::uint64_t total() const;

    friend bool operator==(const DirectlyFollowsGraph&, const DirectlyFollowsGraph&) = default;

private:
    EdgeMap edges_;
};

/// Pairwise sum of counts.
DirectlyFollowsGraph merge_dfg(const DirectlyFollowsGraph& a, const DirectlyFollowsGraph& b);

}  // namespace dpm
