#include "spikepath/oracle.hpp"

#include "fixtures.hpp"

#include <gtest/gtest.h>

using namespace spikepath;

namespace
{
    NodeSet ids(std::initializer_list<std::size_t> v)
    {
        NodeSet s;
        for (const auto x : v)
            s.insert(node(x));
        return s;
    }
}

TEST(Oracle, SingleNode)
{
    const auto net = SpatialNetwork::from_edges({{0, 0}}, {});
    EXPECT_EQ(bfs_distances(net.adjacency, node(0)), std::vector<std::uint32_t>{0});
    EXPECT_EQ(shortest_path_node_set(net.adjacency, node(0), node(0)), ids({0}));
}

TEST(Oracle, PathGraph)
{
    const auto net = fixtures::path_graph(4);
    EXPECT_EQ(bfs_distances(net.adjacency, node(0)), (std::vector<std::uint32_t>{0, 1, 2, 3}));
    EXPECT_EQ(shortest_path_node_set(fixtures::path_graph(3).adjacency, node(0), node(2)), ids({0, 1, 2}));
}

TEST(Oracle, FourCycleHasTwoShortestPaths)
{
    const std::vector<std::pair<NodeId, NodeId>> e{{node(0), node(1)}, {node(1), node(2)}, {node(2), node(3)},
                                                   {node(3), node(0)}};
    const auto net = SpatialNetwork::from_edges(std::vector<Point2>(4), e);
    EXPECT_EQ(shortest_path_node_set(net.adjacency, node(0), node(2)), ids({0, 1, 2, 3}));
}

TEST(Oracle, UnreachableTarget)
{
    const auto net = SpatialNetwork::from_edges(std::vector<Point2>(3), std::vector{std::pair{node(0), node(1)}});
    EXPECT_EQ(bfs_distances(net.adjacency, node(0))[2], unreachable_hops);
    EXPECT_THROW(shortest_path_node_set(net.adjacency, node(0), node(2)), Unreachable);
}

TEST(Oracle, DirectedEdgesAreRespected)
{
    const auto net = SpatialNetwork::from_edges(std::vector<Point2>(3),
                                                std::vector{std::pair{node(0), node(1)}, std::pair{node(1), node(2)}},
                                                false);
    EXPECT_EQ(shortest_path_node_set(net.adjacency, node(0), node(2)), ids({0, 1, 2}));
    EXPECT_THROW(shortest_path_node_set(net.adjacency, node(2), node(0)), Unreachable);
}

TEST(Oracle, ReversedGraph)
{
    const auto net = SpatialNetwork::from_edges(std::vector<Point2>(3),
                                                std::vector{std::pair{node(0), node(1)}, std::pair{node(0), node(2)}},
                                                false);
    const auto r = reversed(net.adjacency);
    EXPECT_TRUE(r[0].empty());
    EXPECT_EQ(r[1], std::vector{node(0)});
    EXPECT_EQ(r[2], std::vector{node(0)});
}

TEST(Oracle, MatchesExhaustiveEnumerationOnRandomGraphs)
{
    std::mt19937_64 rng(20240601);
    for (int trial = 0; trial < 1000; ++trial)
    {
        const auto g = fixtures::random_graph(rng, 10, trial % 2 == 0);
        const auto net = SpatialNetwork::from_edges(std::vector<Point2>(g.n), g.edges, g.symmetric);
        std::uniform_int_distribution<std::size_t> pick(0, g.n - 1);
        const NodeId s = node(pick(rng));
        const NodeId t = node(pick(rng));

        const auto brute = fixtures::enumerate_paths(net.adjacency, s, t);
        const auto d = bfs_distances(net.adjacency, s);
        for (std::size_t v = 0; v < g.n; ++v)
        {
            if (brute.shortest[v] < 0)
                ASSERT_EQ(d[v], unreachable_hops) << "trial " << trial;
            else
                ASSERT_EQ(d[v], static_cast<std::uint32_t>(brute.shortest[v])) << "trial " << trial;
        }
        if (brute.shortest[t.index()] < 0)
            EXPECT_THROW(shortest_path_node_set(net.adjacency, s, t), Unreachable);
        else
            ASSERT_EQ(shortest_path_node_set(net.adjacency, s, t), brute.on_shortest_to_target) << "trial " << trial;
    }
}
