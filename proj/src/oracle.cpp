#include "spikepath/oracle.hpp"

#include <deque>
#include <string>

namespace spikepath
{
    std::vector<std::uint32_t> bfs_distances(const Adjacency &adj, NodeId root)
    {
        std::vector<std::uint32_t> dist(adj.size(), unreachable_hops);
        std::deque<NodeId> frontier;
        dist.at(root.index()) = 0;
        frontier.push_back(root);
        while (!frontier.empty())
        {
            const NodeId u = frontier.front();
            frontier.pop_front();
            for (const NodeId v : adj[u.index()])
            {
                if (dist[v.index()] != unreachable_hops)
                    continue;
                dist[v.index()] = dist[u.index()] + 1;
                frontier.push_back(v);
            }
        }
        return dist;
    }

    Adjacency reversed(const Adjacency &adj)
    {
        Adjacency rev(adj.size());
        for (std::size_t u = 0; u < adj.size(); ++u)
            for (const NodeId v : adj[u])
                rev[v.index()].push_back(node(u));
        return rev;
    }

    NodeSet shortest_path_node_set(const Adjacency &adj, NodeId source, NodeId target)
    {
        const auto from_source = bfs_distances(adj, source);
        const std::uint32_t total = from_source.at(target.index());
        if (total == unreachable_hops)
            throw Unreachable("node " + std::to_string(target.value) + " is unreachable from node " +
                              std::to_string(source.value));
        const auto to_target = bfs_distances(reversed(adj), target);
        NodeSet on_path;
        for (std::size_t v = 0; v < adj.size(); ++v)
        {
            if (from_source[v] == unreachable_hops || to_target[v] == unreachable_hops)
                continue;
            if (from_source[v] + to_target[v] == total)
                on_path.insert(node(v));
        }
        return on_path;
    }
}
