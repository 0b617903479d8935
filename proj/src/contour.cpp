#include "spikepath/analysis.hpp"

#include <array>
#include <deque>
#include <unordered_map>

namespace spikepath
{
    std::vector<double> contour_levels(double lo, double hi, std::size_t n)
    {
        std::vector<double> levels;
        levels.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            levels.push_back(lo + (hi - lo) * static_cast<double>(i + 1) / static_cast<double>(n + 1));
        return levels;
    }

    namespace
    {
        // Grid edges between adjacent cell centres: horizontal edge (x,y)-(x+1,y) has id
        // 2 (y res + x), vertical edge (x,y)-(x,y+1) has id 2 (y res + x) + 1.
        using EdgeId = std::size_t;

        struct Tracer
        {
            const FieldGrid &g;
            double level;

            EdgeId horizontal(std::size_t x, std::size_t y) const { return 2 * (y * g.resolution + x); }
            EdgeId vertical(std::size_t x, std::size_t y) const { return 2 * (y * g.resolution + x) + 1; }

            Point2 crossing(EdgeId e) const
            {
                const std::size_t cell = e / 2;
                const std::size_t x = cell % g.resolution;
                const std::size_t y = cell / g.resolution;
                const std::size_t x2 = (e % 2 == 0) ? x + 1 : x;
                const std::size_t y2 = (e % 2 == 0) ? y : y + 1;
                const double a = *g.at(x, y);
                const double b = *g.at(x2, y2);
                const double t = (level - a) / (b - a);
                const Point2 pa = g.cell_center(x, y);
                const Point2 pb = g.cell_center(x2, y2);
                return {pa.x + t * (pb.x - pa.x), pa.y + t * (pb.y - pa.y)};
            }
        };

        std::vector<std::array<EdgeId, 2>> segments_at(const Tracer &tr)
        {
            const FieldGrid &g = tr.g;
            std::vector<std::array<EdgeId, 2>> segs;
            for (std::size_t y = 0; y + 1 < g.resolution; ++y)
                for (std::size_t x = 0; x + 1 < g.resolution; ++x)
                {
                    const auto &v0 = g.at(x, y);
                    const auto &v1 = g.at(x + 1, y);
                    const auto &v2 = g.at(x + 1, y + 1);
                    const auto &v3 = g.at(x, y + 1);
                    if (!v0 || !v1 || !v2 || !v3)
                        continue;
                    const bool a0 = *v0 > tr.level, a1 = *v1 > tr.level, a2 = *v2 > tr.level, a3 = *v3 > tr.level;
                    const EdgeId bottom = tr.horizontal(x, y);
                    const EdgeId right = tr.vertical(x + 1, y);
                    const EdgeId top = tr.horizontal(x, y + 1);
                    const EdgeId left = tr.vertical(x, y);

                    std::vector<EdgeId> crossed;
                    if (a0 != a1)
                        crossed.push_back(bottom);
                    if (a1 != a2)
                        crossed.push_back(right);
                    if (a2 != a3)
                        crossed.push_back(top);
                    if (a3 != a0)
                        crossed.push_back(left);

                    if (crossed.size() == 2)
                    {
                        segs.push_back({crossed[0], crossed[1]});
                    }
                    else if (crossed.size() == 4)
                    {
                        // Saddle: resolve with the mean of the four corners.
                        const bool centre_above = (*v0 + *v1 + *v2 + *v3) / 4.0 > tr.level;
                        const bool isolate_odd = a0 == centre_above;
                        if (isolate_odd)
                        {
                            segs.push_back({bottom, right});
                            segs.push_back({top, left});
                        }
                        else
                        {
                            segs.push_back({left, bottom});
                            segs.push_back({right, top});
                        }
                    }
                }
            return segs;
        }

        std::vector<Polyline> join(const Tracer &tr, const std::vector<std::array<EdgeId, 2>> &segs)
        {
            std::unordered_map<EdgeId, std::array<std::size_t, 2>> touching;
            constexpr std::size_t none = static_cast<std::size_t>(-1);
            for (std::size_t i = 0; i < segs.size(); ++i)
                for (const EdgeId e : segs[i])
                {
                    auto [it, fresh] = touching.try_emplace(e, std::array<std::size_t, 2>{none, none});
                    it->second[it->second[0] == none ? 0 : 1] = i;
                }

            std::vector<bool> used(segs.size(), false);
            const auto next_from = [&](EdgeId e) -> std::size_t {
                for (const std::size_t s : touching.at(e))
                    if (s != none && !used[s])
                        return s;
                return none;
            };

            std::vector<Polyline> lines;
            for (std::size_t i = 0; i < segs.size(); ++i)
            {
                if (used[i])
                    continue;
                used[i] = true;
                std::deque<EdgeId> chain{segs[i][0], segs[i][1]};
                for (std::size_t s = next_from(chain.back()); s != none; s = next_from(chain.back()))
                {
                    used[s] = true;
                    chain.push_back(segs[s][0] == chain.back() ? segs[s][1] : segs[s][0]);
                }
                for (std::size_t s = next_from(chain.front()); s != none; s = next_from(chain.front()))
                {
                    used[s] = true;
                    chain.push_front(segs[s][0] == chain.front() ? segs[s][1] : segs[s][0]);
                }
                Polyline line;
                line.reserve(chain.size());
                for (const EdgeId e : chain)
                    line.push_back(tr.crossing(e));
                lines.push_back(std::move(line));
            }
            return lines;
        }
    }

    std::vector<ContourLevel> contour_lines(const FieldGrid &grid, std::span<const double> levels)
    {
        std::vector<ContourLevel> out;
        for (const double level : levels)
        {
            const Tracer tr{grid, level};
            out.push_back({level, join(tr, segments_at(tr))});
        }
        return out;
    }

    std::vector<ContourLevel> contour_lines(const FieldGrid &grid, std::size_t n_levels)
    {
        const auto r = grid.range();
        if (!r || r->first == r->second)
            return {};
        const auto levels = contour_levels(r->first, r->second, n_levels);
        return contour_lines(grid, levels);
    }
}
