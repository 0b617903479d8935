#include "spikepath/network.hpp"

#include "spikepath/oracle.hpp"
#include "spikepath/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spikepath
{
    void GenParams::validate() const
    {
        if (n_neurons < 2)
            throw ConfigError("n_neurons must be at least 2");
        if (!(p_min > 0.0))
            throw ConfigError("p_min must be positive");
        if (!(d_min >= 0.0 && d_min < d_max))
            throw ConfigError("annulus requires 0 <= d_min < d_max");
        if (attempts_per_point == 0)
            throw ConfigError("attempts_per_point must be positive");
    }

    std::size_t SpatialNetwork::edge_count() const noexcept
    {
        std::size_t n = 0;
        for (const auto &out : adjacency)
            n += out.size();
        return n;
    }

    SpatialNetwork SpatialNetwork::from_edges(std::vector<Point2> positions,
                                              std::span<const std::pair<NodeId, NodeId>> edges, bool symmetric)
    {
        SpatialNetwork net;
        net.adjacency.resize(positions.size());
        auto add = [&](NodeId u, NodeId v) {
            if (u == v)
                return;
            net.adjacency.at(u.index()).push_back(v);
        };
        for (const auto &[u, v] : edges)
        {
            if (v.index() >= positions.size())
                throw ConfigError("edge endpoint out of range");
            add(u, v);
            if (symmetric)
                add(v, u);
        }
        for (auto &out : net.adjacency)
        {
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
        }
        net.positions = std::move(positions);
        net.environment.name = "custom";
        net.environment.bbox = bounding_box(std::span<const Polygon>(&net.positions, 1));
        net.environment.polygons = {};
        return net;
    }

    namespace
    {
        // Uniform bucket grid with cell size >= p_min, so conflicts sit in the 3x3 block.
        class PackingGrid
        {
        public:
            PackingGrid(const BBox &box, double cell) : origin_(box.min), cell_(cell)
            {
                cols_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(box.width() / cell)) + 1);
                rows_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(box.height() / cell)) + 1);
                buckets_.resize(cols_ * rows_);
            }

            bool conflicts(Point2 p, double min_dist_sq, std::span<const Point2> placed) const
            {
                const auto [cx, cy] = cell_of(p);
                for (std::size_t y = cy == 0 ? 0 : cy - 1; y <= std::min(rows_ - 1, cy + 1); ++y)
                    for (std::size_t x = cx == 0 ? 0 : cx - 1; x <= std::min(cols_ - 1, cx + 1); ++x)
                        for (const std::size_t i : buckets_[y * cols_ + x])
                            if (squared_distance(placed[i], p) < min_dist_sq)
                                return true;
                return false;
            }

            void insert(Point2 p, std::size_t index)
            {
                const auto [cx, cy] = cell_of(p);
                buckets_[cy * cols_ + cx].push_back(index);
            }

        private:
            std::pair<std::size_t, std::size_t> cell_of(Point2 p) const
            {
                auto clamp_index = [](double v, std::size_t n) {
                    const double f = std::floor(v);
                    if (f <= 0.0)
                        return std::size_t{0};
                    return std::min(n - 1, static_cast<std::size_t>(f));
                };
                return {clamp_index((p.x - origin_.x) / cell_, cols_), clamp_index((p.y - origin_.y) / cell_, rows_)};
            }

            Point2 origin_;
            double cell_;
            std::size_t cols_ = 1;
            std::size_t rows_ = 1;
            std::vector<std::vector<std::size_t>> buckets_;
        };
    }

    std::vector<Point2> generate_positions(const Environment &env, const GenParams &gp)
    {
        gp.validate();
        env.validate();
        PortableRng rng(gp.seed);
        PackingGrid grid(env.bbox, gp.p_min);
        const double min_sq = gp.p_min * gp.p_min;

        std::vector<Point2> placed;
        placed.reserve(gp.n_neurons);
        while (placed.size() < gp.n_neurons)
        {
            bool ok = false;
            for (std::size_t attempt = 0; attempt < gp.attempts_per_point && !ok; ++attempt)
            {
                const double x = rng.uniform(env.bbox.min.x, env.bbox.max.x);
                const double y = rng.uniform(env.bbox.min.y, env.bbox.max.y);
                const Point2 p{x, y};
                if (!env.contains(p) || grid.conflicts(p, min_sq, placed))
                    continue;
                grid.insert(p, placed.size());
                placed.push_back(p);
                ok = true;
            }
            if (!ok)
                throw PlacementExhausted(placed.size(), gp.n_neurons);
        }
        return placed;
    }

    SpatialNetwork build_annulus_graph(std::span<const Point2> positions, double d_min, double d_max)
    {
        const double lo = d_min * d_min;
        const double hi = d_max * d_max;
        SpatialNetwork net;
        net.positions.assign(positions.begin(), positions.end());
        net.adjacency.resize(positions.size());
        for (std::size_t u = 0; u < positions.size(); ++u)
            for (std::size_t v = u + 1; v < positions.size(); ++v)
            {
                const double d2 = squared_distance(positions[u], positions[v]);
                if (lo < d2 && d2 < hi)
                {
                    net.adjacency[u].push_back(node(v));
                    net.adjacency[v].push_back(node(u));
                }
            }
        // Pushes happen in ascending order of the other endpoint already.
        return net;
    }

    NodeId pick_node_near(const SpatialNetwork &net, Point2 p)
    {
        if (net.positions.empty())
            throw ConfigError("cannot pick a node from an empty network");
        std::size_t best = 0;
        double best_d2 = squared_distance(net.positions[0], p);
        for (std::size_t i = 1; i < net.positions.size(); ++i)
        {
            const double d2 = squared_distance(net.positions[i], p);
            if (d2 < best_d2)
            {
                best = i;
                best_d2 = d2;
            }
        }
        return node(best);
    }

    NodeId resolve_anchor(const SpatialNetwork &net, const NodeAnchor &anchor)
    {
        if (const auto *id = std::get_if<NodeId>(&anchor))
        {
            if (id->index() >= net.size())
                throw ConfigError("node id " + std::to_string(id->value) + " out of range (network has " +
                                  std::to_string(net.size()) + " nodes)");
            return *id;
        }
        return pick_node_near(net, std::get<Point2>(anchor));
    }

    GeneratedNetwork generate_connected_network(const Environment &env, GenParams gp, const NodeAnchor &source,
                                                std::span<const NodeAnchor> targets, std::size_t max_retries)
    {
        if (targets.empty())
            throw ConfigError("at least one target is required");
        const std::uint64_t first_seed = gp.seed;
        for (std::size_t attempt = 0; attempt <= max_retries; ++attempt)
        {
            gp.seed = first_seed + attempt;
            const auto positions = generate_positions(env, gp);
            SpatialNetwork net = build_annulus_graph(positions, gp.d_min, gp.d_max);
            net.environment = env;

            GeneratedNetwork out{std::move(net), gp, {}, {}};
            out.source = resolve_anchor(out.net, source);
            for (const auto &t : targets)
                out.targets.push_back(resolve_anchor(out.net, t));

            const auto dist = bfs_distances(out.net.adjacency, out.source);
            const bool all_reachable = std::all_of(out.targets.begin(), out.targets.end(),
                                                   [&](NodeId t) { return dist[t.index()] != unreachable_hops; });
            if (all_reachable)
                return out;
        }
        throw Unreachable("no seed in [" + std::to_string(first_seed) + ", " +
                          std::to_string(first_seed + max_retries) + "] connects source and targets");
    }
}
