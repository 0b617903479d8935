#pragma once

#include "spikepath/engine.hpp"
#include "spikepath/geometry.hpp"
#include "spikepath/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace spikepath
{
    // Earliest emission among the targets; nullopt if none fired.
    std::optional<Millis> time_to_target(const IterationRecord &rec, std::span<const NodeId> targets);

    struct SpikeSample
    {
        Point2 position;
        Millis time = 0.0;
    };

    // One sample per neuron that fired in an iteration.
    struct SpikeField
    {
        std::vector<SpikeSample> samples;
    };

    SpikeField spike_field(const IterationRecord &rec, std::span<const Point2> positions);

    // Cell-centred raster over a bbox; row 0 is the bottom row. Cells with no sample
    // inside the influence radius are masked (nullopt).
    struct FieldGrid
    {
        BBox bbox;
        std::size_t resolution = 0;
        std::vector<std::optional<double>> values;

        Point2 cell_center(std::size_t ix, std::size_t iy) const noexcept;
        const std::optional<double> &at(std::size_t ix, std::size_t iy) const { return values[iy * resolution + ix]; }
        std::size_t unmasked() const noexcept;
        // nullopt when every cell is masked.
        std::optional<std::pair<double, double>> range() const;
    };

    // Inverse-distance weighting (power 2) of the samples within influence_radius of each
    // cell centre. A sample sitting exactly on a centre wins outright. Throws
    // std::invalid_argument for resolution < 8.
    FieldGrid rasterize_field(const SpikeField &field, const BBox &bbox, std::size_t resolution,
                              double influence_radius);

    using Polyline = std::vector<Point2>;

    struct ContourLevel
    {
        double level = 0.0;
        std::vector<Polyline> polylines; // closed loops repeat their first point at the end
    };

    // n interior levels evenly spaced in (lo, hi): lo + (hi - lo) (i + 1) / (n + 1).
    std::vector<double> contour_levels(double lo, double hi, std::size_t n);

    // Marching squares over the cell centres; squares touching a masked cell are skipped.
    std::vector<ContourLevel> contour_lines(const FieldGrid &grid, std::span<const double> levels);

    // Levels spread over the grid's own value range. A constant field has no isolines
    // and yields an empty result.
    std::vector<ContourLevel> contour_lines(const FieldGrid &grid, std::size_t n_levels);

    struct OracleReport
    {
        bool exact_match = false;
        NodeSet missing; // oracle minus readout
        NodeSet extra;   // readout minus oracle
        double jaccard = 0.0;
    };

    OracleReport compare_to_oracle(const NodeSet &readout, const NodeSet &oracle);

    struct AuditEntry
    {
        std::size_t iteration = 0;
        bool passed = true;
        NodeSet missing;    // on a shortest path within k hops of the target, yet untagged
        NodeSet unexpected; // tagged though more than k hops from the target
    };

    struct InductionAudit
    {
        std::vector<AuditEntry> entries;
        bool passed = true;
        std::optional<std::size_t> first_failure; // iteration index
    };

    // After iteration k the tagged set must contain every node on a shortest
    // source->target path with d(v, target) <= k, and only nodes with d(v, target) <= k
    // besides the targets. Checks every recorded iteration, the readout included. The
    // first inclusion is only checked for global inhibition.
    InductionAudit audit_induction(const RunResult &run, const Adjacency &adj, NodeId source, NodeId target);
}
