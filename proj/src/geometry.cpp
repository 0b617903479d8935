#include "spikepath/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spikepath
{
    double distance(Point2 a, Point2 b) noexcept { return std::sqrt(squared_distance(a, b)); }

    namespace
    {
        double cross(Point2 o, Point2 a, Point2 b) noexcept
        {
            return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
        }

        bool on_segment(Point2 a, Point2 b, Point2 p) noexcept
        {
            return cross(a, b, p) == 0.0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
                   std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
        }

        int sign(double v) noexcept { return (v > 0.0) - (v < 0.0); }

        bool segments_touch(Point2 a, Point2 b, Point2 c, Point2 d) noexcept
        {
            const int d1 = sign(cross(c, d, a));
            const int d2 = sign(cross(c, d, b));
            const int d3 = sign(cross(a, b, c));
            const int d4 = sign(cross(a, b, d));
            if (d1 * d2 < 0 && d3 * d4 < 0)
                return true;
            return (d1 == 0 && on_segment(c, d, a)) || (d2 == 0 && on_segment(c, d, b)) ||
                   (d3 == 0 && on_segment(a, b, c)) || (d4 == 0 && on_segment(a, b, d));
        }
    }

    bool point_in_polygon(const Polygon &poly, Point2 p) noexcept
    {
        const std::size_t n = poly.size();
        if (n < 3)
            return false;
        bool inside = false;
        for (std::size_t i = 0, j = n - 1; i < n; j = i++)
        {
            const Point2 a = poly[i];
            const Point2 b = poly[j];
            if (on_segment(a, b, p))
                return true;
            if ((a.y > p.y) != (b.y > p.y))
            {
                const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x_cross)
                    inside = !inside;
            }
        }
        return inside;
    }

    bool is_simple_polygon(const Polygon &poly) noexcept
    {
        const std::size_t n = poly.size();
        if (n < 3)
            return false;
        for (std::size_t i = 0; i < n; ++i)
        {
            const Point2 a = poly[i];
            const Point2 b = poly[(i + 1) % n];
            if (a == b)
                return false;
            for (std::size_t j = i + 1; j < n; ++j)
            {
                const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
                if (adjacent)
                    continue;
                if (segments_touch(a, b, poly[j], poly[(j + 1) % n]))
                    return false;
            }
        }
        return std::abs(polygon_area(poly)) > 0.0;
    }

    double polygon_area(const Polygon &poly) noexcept
    {
        double twice = 0.0;
        const std::size_t n = poly.size();
        for (std::size_t i = 0; i < n; ++i)
        {
            const Point2 a = poly[i];
            const Point2 b = poly[(i + 1) % n];
            twice += a.x * b.y - b.x * a.y;
        }
        return 0.5 * twice;
    }

    BBox bounding_box(std::span<const Polygon> polys)
    {
        constexpr double inf = std::numeric_limits<double>::infinity();
        BBox box{{inf, inf}, {-inf, -inf}};
        for (const auto &poly : polys)
            for (const auto &p : poly)
            {
                box.min.x = std::min(box.min.x, p.x);
                box.min.y = std::min(box.min.y, p.y);
                box.max.x = std::max(box.max.x, p.x);
                box.max.y = std::max(box.max.y, p.y);
            }
        return box;
    }
}
