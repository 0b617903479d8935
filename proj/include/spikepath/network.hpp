#pragma once

#include "spikepath/environment.hpp"
#include "spikepath/geometry.hpp"
#include "spikepath/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace spikepath
{
    struct GenParams
    {
        std::size_t n_neurons = 1000;
        double p_min = 0.01; // minimum packing distance, m
        double d_min = 0.05; // annulus inner radius, m
        double d_max = 0.15; // annulus outer radius, m
        std::uint64_t seed = 1;
        std::size_t attempts_per_point = 10000;

        void validate() const;
    };

    struct SpatialNetwork
    {
        std::vector<Point2> positions;
        Adjacency adjacency; // out-neighbours, ascending NodeId
        Environment environment;

        std::size_t size() const noexcept { return positions.size(); }
        std::size_t edge_count() const noexcept;

        // Synthetic graph with arbitrary layout; edges are directed and deduplicated.
        static SpatialNetwork from_edges(std::vector<Point2> positions,
                                         std::span<const std::pair<NodeId, NodeId>> edges,
                                         bool symmetric = true);
    };

    // Dart throwing inside env; deterministic in gp.seed.
    std::vector<Point2> generate_positions(const Environment &env, const GenParams &gp);

    // Edge (u,v) iff d_min^2 < |x(u)-x(v)|^2 < d_max^2.
    SpatialNetwork build_annulus_graph(std::span<const Point2> positions, double d_min, double d_max);

    // Nearest node to p; ties go to the lowest id.
    NodeId pick_node_near(const SpatialNetwork &net, Point2 p);

    // Where a source or target sits: nearest node to a point, or an explicit id.
    using NodeAnchor = std::variant<Point2, NodeId>;

    // Throws ConfigError for an id outside the network.
    NodeId resolve_anchor(const SpatialNetwork &net, const NodeAnchor &anchor);

    struct GeneratedNetwork
    {
        SpatialNetwork net;
        GenParams gen; // gen.seed is the seed that produced net
        NodeId source;
        std::vector<NodeId> targets;
    };

    // Generates with gp.seed, gp.seed+1, ... until every target is reachable from the
    // source; throws Unreachable after max_retries further seeds.
    GeneratedNetwork generate_connected_network(const Environment &env, GenParams gp, const NodeAnchor &source,
                                                std::span<const NodeAnchor> targets, std::size_t max_retries);
}
