#pragma once

#include "spikepath/analysis.hpp"
#include "spikepath/network.hpp"

#include <string>

namespace spikepath
{
    struct Panel
    {
        const SpatialNetwork *net = nullptr;
        const IterationRecord *record = nullptr;
        NodeId source;
        std::vector<NodeId> targets;
        const FieldGrid *heat = nullptr;             // optional background
        const std::vector<ContourLevel> *contours = nullptr;
        std::pair<double, double> time_range{0.0, 1.0}; // colour scale, ms
        std::string title;
    };

    // Colours: silent gray, spiked orange, tagged red; source in a blue box,
    // targets in white boxes. Heat map runs from yellow (early) to purple (late).
    std::string render_panel_svg(const Panel &panel);
}
