#include "spikepath/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

namespace spikepath
{
    namespace
    {
        constexpr double plot_size = 400.0;
        constexpr double margin = 20.0;
        constexpr double title_h = 30.0;

        std::string num(double v)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", v);
            return buf;
        }

        struct Frame
        {
            BBox box;
            double scale;

            double x(double wx) const { return margin + (wx - box.min.x) * scale; }
            double y(double wy) const { return title_h + margin + (box.max.y - wy) * scale; }
        };

        std::string heat_colour(double t)
        {
            // yellow -> orange -> magenta -> purple
            static constexpr std::array<std::array<double, 3>, 4> stops{{
                {253, 231, 37},
                {245, 134, 52},
                {190, 60, 130},
                {68, 20, 110},
            }};
            t = std::clamp(t, 0.0, 1.0) * 3.0;
            const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(t), 2);
            const double f = t - static_cast<double>(i);
            char buf[8];
            int rgb[3];
            for (int c = 0; c < 3; ++c)
                rgb[c] = static_cast<int>(stops[i][c] + f * (stops[i + 1][c] - stops[i][c]) + 0.5);
            std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
            return buf;
        }
    }

    std::string render_panel_svg(const Panel &p)
    {
        const SpatialNetwork &net = *p.net;
        const IterationRecord &rec = *p.record;
        const BBox box = net.environment.bbox;
        const double extent = std::max(box.width(), box.height());
        const Frame f{box, plot_size / (extent > 0.0 ? extent : 1.0)};
        const double w = plot_size + 2 * margin;
        const double h = plot_size + 2 * margin + title_h;

        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(w) << "\" height=\"" << num(h)
           << "\" viewBox=\"0 0 " << num(w) << ' ' << num(h) << "\">\n";
        os << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
        os << "<text x=\"" << num(w / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           << "font-size=\"14\">" << p.title << "</text>\n";

        os << "<g id=\"environment\" fill=\"#f4f4f4\" stroke=\"#999999\" stroke-width=\"1\">\n";
        for (const auto &poly : net.environment.polygons)
        {
            os << "<polygon points=\"";
            for (std::size_t i = 0; i < poly.size(); ++i)
                os << (i ? " " : "") << num(f.x(poly[i].x)) << ',' << num(f.y(poly[i].y));
            os << "\"/>\n";
        }
        os << "</g>\n";

        if (p.heat)
        {
            const FieldGrid &g = *p.heat;
            const double lo = p.time_range.first;
            const double span = p.time_range.second - lo;
            const double cw = g.bbox.width() / static_cast<double>(g.resolution) * f.scale;
            const double ch = g.bbox.height() / static_cast<double>(g.resolution) * f.scale;
            os << "<g id=\"heat\" opacity=\"0.55\">\n";
            for (std::size_t iy = 0; iy < g.resolution; ++iy)
                for (std::size_t ix = 0; ix < g.resolution; ++ix)
                {
                    const auto &v = g.at(ix, iy);
                    if (!v)
                        continue;
                    const Point2 c = g.cell_center(ix, iy);
                    const double t = span > 0.0 ? (*v - lo) / span : 0.0;
                    os << "<rect x=\"" << num(f.x(c.x) - cw / 2) << "\" y=\"" << num(f.y(c.y) - ch / 2)
                       << "\" width=\"" << num(cw) << "\" height=\"" << num(ch) << "\" fill=\""
                       << heat_colour(t) << "\"/>\n";
                }
            os << "</g>\n";
        }

        if (p.contours && !p.contours->empty())
        {
            os << "<g id=\"contours\" fill=\"none\" stroke=\"#333333\" stroke-width=\"0.8\">\n";
            for (const auto &lvl : *p.contours)
                for (const auto &line : lvl.polylines)
                {
                    os << "<polyline data-level=\"" << num(lvl.level) << "\" points=\"";
                    for (std::size_t i = 0; i < line.size(); ++i)
                        os << (i ? " " : "") << num(f.x(line[i].x)) << ',' << num(f.y(line[i].y));
                    os << "\"/>\n";
                }
            os << "</g>\n";
        }

        os << "<g id=\"neurons\" stroke=\"none\">\n";
        for (std::size_t v = 0; v < net.size(); ++v)
        {
            const bool tagged = rec.tagged_after.contains(node(v));
            const bool spiked = v < rec.spike_time.size() && rec.spike_time[v].has_value();
            const char *colour = tagged ? "#d62728" : spiked ? "#ff8c00" : "#b0b0b0";
            os << "<circle cx=\"" << num(f.x(net.positions[v].x)) << "\" cy=\"" << num(f.y(net.positions[v].y))
               << "\" r=\"2.2\" fill=\"" << colour << "\"/>\n";
        }
        os << "</g>\n";

        const auto marker = [&](NodeId v, const char *fill, const char *id) {
            const Point2 q = net.positions[v.index()];
            os << "<rect class=\"" << id << "\" x=\"" << num(f.x(q.x) - 5) << "\" y=\"" << num(f.y(q.y) - 5)
               << "\" width=\"10\" height=\"10\" fill=\"" << fill
               << "\" fill-opacity=\"0.6\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
        };
        for (const NodeId t : p.targets)
            marker(t, "#ffffff", "target");
        marker(p.source, "#1f5fd6", "source");

        os << "</svg>\n";
        return os.str();
    }
}
