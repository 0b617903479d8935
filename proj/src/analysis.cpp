#include "spikepath/analysis.hpp"

#include "spikepath/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace spikepath
{
    std::optional<Millis> time_to_target(const IterationRecord &rec, std::span<const NodeId> targets)
    {
        std::optional<Millis> best;
        for (const NodeId t : targets)
        {
            if (t.index() >= rec.spike_time.size())
                continue;
            if (const auto &st = rec.spike_time[t.index()]; st && (!best || *st < *best))
                best = st;
        }
        return best;
    }

    SpikeField spike_field(const IterationRecord &rec, std::span<const Point2> positions)
    {
        SpikeField field;
        for (std::size_t i = 0; i < rec.spike_time.size() && i < positions.size(); ++i)
            if (rec.spike_time[i])
                field.samples.push_back({positions[i], *rec.spike_time[i]});
        return field;
    }

    Point2 FieldGrid::cell_center(std::size_t ix, std::size_t iy) const noexcept
    {
        const double dx = bbox.width() / static_cast<double>(resolution);
        const double dy = bbox.height() / static_cast<double>(resolution);
        return {bbox.min.x + (static_cast<double>(ix) + 0.5) * dx, bbox.min.y + (static_cast<double>(iy) + 0.5) * dy};
    }

    std::size_t FieldGrid::unmasked() const noexcept
    {
        return static_cast<std::size_t>(
            std::count_if(values.begin(), values.end(), [](const auto &v) { return v.has_value(); }));
    }

    std::optional<std::pair<double, double>> FieldGrid::range() const
    {
        std::optional<std::pair<double, double>> r;
        for (const auto &v : values)
        {
            if (!v)
                continue;
            if (!r)
                r = std::pair{*v, *v};
            else
                r = std::pair{std::min(r->first, *v), std::max(r->second, *v)};
        }
        return r;
    }

    FieldGrid rasterize_field(const SpikeField &field, const BBox &bbox, std::size_t resolution,
                              double influence_radius)
    {
        if (resolution < 8)
            throw std::invalid_argument("rasterize_field: resolution must be at least 8");
        if (!(influence_radius > 0.0))
            throw std::invalid_argument("rasterize_field: influence radius must be positive");

        FieldGrid grid;
        grid.bbox = bbox;
        grid.resolution = resolution;
        grid.values.assign(resolution * resolution, std::nullopt);

        // Bucket the samples by influence radius relative to the bbox origin.
        const auto bucket_of = [&](double v, double lo) {
            return static_cast<long>(std::floor((v - lo) / influence_radius));
        };
        const long cols = bucket_of(bbox.max.x, bbox.min.x) + 1;
        const long rows = bucket_of(bbox.max.y, bbox.min.y) + 1;
        std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(cols * rows));
        std::vector<std::size_t> outside;
        for (std::size_t i = 0; i < field.samples.size(); ++i)
        {
            const Point2 p = field.samples[i].position;
            const long bx = bucket_of(p.x, bbox.min.x);
            const long by = bucket_of(p.y, bbox.min.y);
            if (bx < 0 || by < 0 || bx >= cols || by >= rows)
                outside.push_back(i);
            else
                buckets[static_cast<std::size_t>(by * cols + bx)].push_back(i);
        }

        const double r2 = influence_radius * influence_radius;
        std::vector<std::size_t> near;
        for (std::size_t iy = 0; iy < resolution; ++iy)
            for (std::size_t ix = 0; ix < resolution; ++ix)
            {
                const Point2 c = grid.cell_center(ix, iy);
                near.clear();
                const long cx = bucket_of(c.x, bbox.min.x);
                const long cy = bucket_of(c.y, bbox.min.y);
                for (long y = std::max(0L, cy - 1); y <= std::min(rows - 1, cy + 1); ++y)
                    for (long x = std::max(0L, cx - 1); x <= std::min(cols - 1, cx + 1); ++x)
                        for (const std::size_t i : buckets[static_cast<std::size_t>(y * cols + x)])
                            near.push_back(i);
                near.insert(near.end(), outside.begin(), outside.end());
                // Fixed summation order keeps the raster bit-reproducible.
                std::sort(near.begin(), near.end());

                double wsum = 0.0;
                double vsum = 0.0;
                double exact_sum = 0.0;
                std::size_t exact_n = 0;
                for (const std::size_t i : near)
                {
                    const double d2 = squared_distance(field.samples[i].position, c);
                    if (d2 > r2)
                        continue;
                    if (d2 == 0.0)
                    {
                        exact_sum += field.samples[i].time;
                        ++exact_n;
                        continue;
                    }
                    const double w = 1.0 / d2;
                    wsum += w;
                    vsum += w * field.samples[i].time;
                }
                auto &cell = grid.values[iy * resolution + ix];
                if (exact_n > 0)
                    cell = exact_sum / static_cast<double>(exact_n);
                else if (wsum > 0.0)
                    cell = vsum / wsum;
            }
        return grid;
    }

    OracleReport compare_to_oracle(const NodeSet &readout, const NodeSet &oracle)
    {
        OracleReport rep;
        std::set_difference(oracle.begin(), oracle.end(), readout.begin(), readout.end(),
                            std::inserter(rep.missing, rep.missing.end()));
        std::set_difference(readout.begin(), readout.end(), oracle.begin(), oracle.end(),
                            std::inserter(rep.extra, rep.extra.end()));
        rep.exact_match = rep.missing.empty() && rep.extra.empty();
        const std::size_t uni = readout.size() + rep.missing.size();
        const std::size_t inter = readout.size() - rep.extra.size();
        rep.jaccard = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
        return rep;
    }

    InductionAudit audit_induction(const RunResult &run, const Adjacency &adj, NodeId source, NodeId target)
    {
        const auto from_source = bfs_distances(adj, source);
        const auto to_target = bfs_distances(reversed(adj), target);
        const std::uint32_t total = from_source.at(target.index());
        const NodeSet targets(run.config.targets.begin(), run.config.targets.end());

        std::vector<const IterationRecord *> records;
        for (const auto &rec : run.iterations)
            records.push_back(&rec);
        if (run.readout_record)
            records.push_back(&*run.readout_record);

        // The superset direction relies on global inhibition; other modes only get the
        // one-hop-per-iteration bound.
        const bool check_superset = run.config.mode == InhibitionMode::global;

        InductionAudit audit;
        for (const IterationRecord *rec : records)
        {
            AuditEntry entry;
            entry.iteration = rec->index;
            const std::size_t k = rec->index;
            for (std::size_t v = 0; v < adj.size(); ++v)
            {
                const bool tagged = rec->tagged_after.contains(node(v));
                const bool within_k = to_target[v] != unreachable_hops && to_target[v] <= k;
                const bool on_path = total != unreachable_hops && from_source[v] != unreachable_hops &&
                                     to_target[v] != unreachable_hops && from_source[v] + to_target[v] == total;
                if (check_superset && on_path && within_k && !tagged)
                    entry.missing.insert(node(v));
                if (tagged && !within_k && !targets.contains(node(v)))
                    entry.unexpected.insert(node(v));
            }
            entry.passed = entry.missing.empty() && entry.unexpected.empty();
            if (!entry.passed && audit.passed)
            {
                audit.passed = false;
                audit.first_failure = entry.iteration;
            }
            audit.entries.push_back(std::move(entry));
        }
        return audit;
    }
}
