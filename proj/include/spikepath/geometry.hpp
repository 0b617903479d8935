#pragma once

#include <span>
#include <vector>

namespace spikepath
{
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;

        bool operator==(const Point2 &) const = default;
    };

    inline double squared_distance(Point2 a, Point2 b) noexcept
    {
        const double dx = a.x - b.x;
        const double dy = a.y - b.y;
        return dx * dx + dy * dy;
    }

    double distance(Point2 a, Point2 b) noexcept;

    struct BBox
    {
        Point2 min;
        Point2 max;

        double width() const noexcept { return max.x - min.x; }
        double height() const noexcept { return max.y - min.y; }
        bool contains(Point2 p) const noexcept
        {
            return p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y;
        }
        bool operator==(const BBox &) const = default;
    };

    using Polygon = std::vector<Point2>;

    // Even-odd rule; points on the boundary count as inside.
    bool point_in_polygon(const Polygon &poly, Point2 p) noexcept;

    // True if no two non-adjacent edges touch and the polygon has >= 3 vertices.
    bool is_simple_polygon(const Polygon &poly) noexcept;

    double polygon_area(const Polygon &poly) noexcept;

    BBox bounding_box(std::span<const Polygon> polys);
}
