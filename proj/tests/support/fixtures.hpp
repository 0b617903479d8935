#pragma once

#include "spikepath/engine.hpp"
#include "spikepath/io.hpp"
#include "spikepath/network.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace spikepath::fixtures
{
    // 0 - 1 - ... - (n-1), laid out along x.
    inline SpatialNetwork path_graph(std::size_t n)
    {
        std::vector<Point2> pos;
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (std::size_t i = 0; i < n; ++i)
        {
            pos.push_back({0.1 * static_cast<double>(i), 0.0});
            if (i + 1 < n)
                edges.push_back({node(i), node(i + 1)});
        }
        return SpatialNetwork::from_edges(std::move(pos), edges);
    }

    // 4-neighbour lattice, id = y * w + x.
    inline SpatialNetwork grid_graph(std::size_t w, std::size_t h)
    {
        std::vector<Point2> pos;
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (std::size_t y = 0; y < h; ++y)
            for (std::size_t x = 0; x < w; ++x)
            {
                pos.push_back({0.1 * static_cast<double>(x), 0.1 * static_cast<double>(y)});
                if (x + 1 < w)
                    edges.push_back({node(y * w + x), node(y * w + x + 1)});
                if (y + 1 < h)
                    edges.push_back({node(y * w + x), node((y + 1) * w + x)});
            }
        return SpatialNetwork::from_edges(std::move(pos), edges);
    }

    inline RunConfig run_config(NodeId source, std::vector<NodeId> targets,
                                InhibitionMode mode = InhibitionMode::global, TimingParams tp = {})
    {
        RunConfig cfg;
        cfg.timing = tp;
        cfg.mode = mode;
        cfg.source = source;
        cfg.targets = std::move(targets);
        return cfg;
    }

    // One parsed trace.jsonl line.
    struct TraceRow
    {
        std::size_t iter = 0;
        double t = 0.0;
        int prio = 0;
        std::uint64_t seq = 0;
        std::string kind;
        std::uint32_t from = 0;
        std::uint32_t to = 0;
    };

    struct TracedRun
    {
        RunResult result;
        std::vector<TraceRow> rows;
        std::string jsonl;
    };

    // Runs to convergence and captures the trace exactly as trace.jsonl would hold it.
    inline TracedRun traced_run(const SpatialNetwork &net, const RunConfig &cfg)
    {
        TracedRun out;
        out.result = run_until_converged(net, cfg, [&](std::size_t it, const Event &ev) {
            out.jsonl += trace_line(it, ev);
            out.jsonl += '\n';
        });
        std::size_t start = 0;
        while (start < out.jsonl.size())
        {
            const std::size_t end = out.jsonl.find('\n', start);
            const auto j = nlohmann::json::parse(out.jsonl.substr(start, end - start));
            out.rows.push_back({j.at("iter").get<std::size_t>(), j.at("t").get<double>(), j.at("prio").get<int>(),
                                j.at("seq").get<std::uint64_t>(), j.at("kind").get<std::string>(),
                                j.at("from").get<std::uint32_t>(), j.at("to").get<std::uint32_t>()});
            start = end + 1;
        }
        return out;
    }

    // Hand-computed timeline entry.
    struct Expected
    {
        double t;
        const char *kind; // "timer", "E", "I"
        std::uint32_t from;
        std::uint32_t to;
    };

    // Random graph with at most max_nodes nodes; undirected ones are connected.
    struct RandomGraph
    {
        std::size_t n = 0;
        std::vector<std::pair<NodeId, NodeId>> edges;
        bool symmetric = true;
    };

    inline RandomGraph random_graph(std::mt19937_64 &rng, std::size_t max_nodes, bool symmetric)
    {
        RandomGraph g;
        g.symmetric = symmetric;
        g.n = std::uniform_int_distribution<std::size_t>(1, max_nodes)(rng);
        const double p = std::uniform_real_distribution<double>(0.15, 0.6)(rng);
        std::bernoulli_distribution coin(p);
        if (symmetric)
        {
            // Random spanning tree first so the graph is connected.
            for (std::size_t v = 1; v < g.n; ++v)
            {
                const std::size_t u = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
                g.edges.push_back({node(u), node(v)});
            }
            for (std::size_t u = 0; u < g.n; ++u)
                for (std::size_t v = u + 1; v < g.n; ++v)
                    if (coin(rng))
                        g.edges.push_back({node(u), node(v)});
        }
        else
        {
            for (std::size_t u = 0; u < g.n; ++u)
                for (std::size_t v = 0; v < g.n; ++v)
                    if (u != v && coin(rng))
                        g.edges.push_back({node(u), node(v)});
        }
        return g;
    }

    // Exhaustive enumeration of simple paths from a root: shortest length to every node
    // (-1 if none) and, for one target, the union of nodes on its minimum-length paths.
    struct Enumeration
    {
        std::vector<int> shortest;
        NodeSet on_shortest_to_target;
    };

    inline Enumeration enumerate_paths(const Adjacency &adj, NodeId root, NodeId target)
    {
        const std::size_t n = adj.size();
        Enumeration e;
        e.shortest.assign(n, -1);
        std::vector<std::vector<std::size_t>> to_target_paths;
        std::vector<std::size_t> path{root.index()};
        std::vector<bool> on(n, false);
        on[root.index()] = true;

        const auto visit = [&](auto &&self) -> void {
            const std::size_t v = path.back();
            const int len = static_cast<int>(path.size()) - 1;
            if (e.shortest[v] < 0 || len < e.shortest[v])
                e.shortest[v] = len;
            if (v == target.index())
                to_target_paths.push_back(path);
            for (const NodeId w : adj[v])
            {
                if (on[w.index()])
                    continue;
                on[w.index()] = true;
                path.push_back(w.index());
                self(self);
                path.pop_back();
                on[w.index()] = false;
            }
        };
        visit(visit);

        for (const auto &p : to_target_paths)
            if (static_cast<int>(p.size()) - 1 == e.shortest[target.index()])
                for (const std::size_t v : p)
                    e.on_shortest_to_target.insert(node(v));
        return e;
    }
}
