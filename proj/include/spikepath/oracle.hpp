#pragma once

#include "spikepath/types.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace spikepath
{
    inline constexpr std::uint32_t unreachable_hops = std::numeric_limits<std::uint32_t>::max();

    // Hop distance from root along out-edges; unreachable_hops where there is no path.
    std::vector<std::uint32_t> bfs_distances(const Adjacency &adj, NodeId root);

    Adjacency reversed(const Adjacency &adj);

    // Every node lying on at least one minimum-hop source->target path, endpoints included.
    // Throws Unreachable if target cannot be reached.
    NodeSet shortest_path_node_set(const Adjacency &adj, NodeId source, NodeId target);
}
