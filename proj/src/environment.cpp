#include "spikepath/environment.hpp"

#include "spikepath/types.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

namespace spikepath
{
    namespace
    {
        Polygon rect(double x0, double y0, double x1, double y1)
        {
            return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
        }

        // Vertices are snapped to 1e-9 so the preset does not depend on libm rounding.
        Polygon disk(Point2 c, double r, int segments)
        {
            Polygon poly;
            poly.reserve(static_cast<std::size_t>(segments));
            for (int i = 0; i < segments; ++i)
            {
                const double a = 2.0 * std::numbers::pi * i / segments;
                poly.push_back({std::round((c.x + r * std::cos(a)) * 1e9) / 1e9,
                                std::round((c.y + r * std::sin(a)) * 1e9) / 1e9});
            }
            return poly;
        }

        Environment make(std::string name, EnvironmentKind kind, std::vector<Polygon> polys)
        {
            Environment env{std::move(name), kind, std::move(polys), {{0.0, 0.0}, {1.0, 1.0}}};
            return env;
        }

        EnvironmentKind kind_for_name(std::string_view name)
        {
            if (name == "square")
                return EnvironmentKind::square;
            if (name == "circle")
                return EnvironmentKind::circle;
            if (name == "a_maze")
                return EnvironmentKind::a_maze;
            if (name == "t_maze")
                return EnvironmentKind::t_maze;
            return EnvironmentKind::custom;
        }

        std::string joined_presets()
        {
            std::string out;
            for (const auto &n : preset_names())
            {
                if (!out.empty())
                    out += ", ";
                out += n;
            }
            return out;
        }
    }

    std::string_view to_string(EnvironmentKind kind) noexcept
    {
        switch (kind)
        {
        case EnvironmentKind::square:
            return "square";
        case EnvironmentKind::circle:
            return "circle";
        case EnvironmentKind::a_maze:
            return "a_maze";
        case EnvironmentKind::t_maze:
            return "t_maze";
        case EnvironmentKind::custom:
            return "custom";
        }
        return "custom";
    }

    bool Environment::contains(Point2 p) const noexcept
    {
        if (!bbox.contains(p))
            return false;
        for (const auto &poly : polygons)
            if (point_in_polygon(poly, p))
                return true;
        return false;
    }

    void Environment::validate() const
    {
        if (polygons.empty())
            throw ConfigError("environment '" + name + "' has no polygons");
        for (const auto &poly : polygons)
            if (!is_simple_polygon(poly))
                throw ConfigError("environment '" + name + "' contains a non-simple polygon");
        const BBox tight = bounding_box(polygons);
        if (!(bbox.contains(tight.min) && bbox.contains(tight.max)))
            throw ConfigError("environment '" + name + "' bbox does not cover its polygons");
    }

    const std::vector<std::string> &preset_names()
    {
        static const std::vector<std::string> names{"a_maze", "circle", "square", "t_maze"};
        return names;
    }

    Environment preset_environment(std::string_view name)
    {
        if (name == "square")
            return make("square", EnvironmentKind::square, {rect(0.0, 0.0, 1.0, 1.0)});
        if (name == "circle")
            return make("circle", EnvironmentKind::circle, {disk({0.5, 0.5}, 0.5, 256)});
        if (name == "a_maze")
        {
            // Two slanted legs meeting at the apex plus a crossbar at mid height.
            return make("a_maze", EnvironmentKind::a_maze,
                        {
                            {{0.0, 0.0}, {0.2, 0.0}, {0.6, 1.0}, {0.4, 1.0}},
                            {{0.8, 0.0}, {1.0, 0.0}, {0.6, 1.0}, {0.4, 1.0}},
                            {{0.26, 0.4}, {0.74, 0.4}, {0.66, 0.6}, {0.34, 0.6}},
                        });
        }
        if (name == "t_maze")
            return make("t_maze", EnvironmentKind::t_maze,
                        {rect(0.4, 0.0, 0.6, 0.8), rect(0.0, 0.8, 1.0, 1.0)});
        throw ConfigError("unknown environment '" + std::string(name) + "' (presets: " + joined_presets() + ")");
    }

    Environment environment_from_json(const nlohmann::json &j)
    {
        try
        {
            Environment env;
            env.name = j.at("name").get<std::string>();
            env.kind = kind_for_name(env.name);
            for (const auto &jp : j.at("polygons"))
            {
                Polygon poly;
                for (const auto &v : jp)
                    poly.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
                env.polygons.push_back(std::move(poly));
            }
            if (j.contains("bbox"))
            {
                const auto &b = j.at("bbox");
                env.bbox = {{b.at(0).at(0).get<double>(), b.at(0).at(1).get<double>()},
                            {b.at(1).at(0).get<double>(), b.at(1).at(1).get<double>()}};
            }
            else
            {
                env.bbox = bounding_box(env.polygons);
            }
            env.validate();
            return env;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError(std::string("malformed environment: ") + e.what());
        }
    }

    nlohmann::json environment_to_json(const Environment &env)
    {
        nlohmann::json polys = nlohmann::json::array();
        for (const auto &poly : env.polygons)
        {
            nlohmann::json jp = nlohmann::json::array();
            for (const auto &p : poly)
                jp.push_back({p.x, p.y});
            polys.push_back(std::move(jp));
        }
        return {
            {"name", env.name},
            {"polygons", std::move(polys)},
            {"bbox", {{env.bbox.min.x, env.bbox.min.y}, {env.bbox.max.x, env.bbox.max.y}}},
        };
    }

    Environment load_environment(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open environment file " + path.string());
        nlohmann::json j;
        try
        {
            in >> j;
        }
        catch (const nlohmann::json::exception &e)
        {
            throw ConfigError("cannot parse " + path.string() + ": " + e.what());
        }
        return environment_from_json(j);
    }

    Environment resolve_environment(std::string_view name_or_path)
    {
        for (const auto &n : preset_names())
            if (n == name_or_path)
                return preset_environment(n);
        const std::filesystem::path path{std::string(name_or_path)};
        if (std::filesystem::exists(path))
            return load_environment(path);
        throw ConfigError("unknown environment '" + std::string(name_or_path) +
                          "' (presets: " + joined_presets() + ", or a path to an environment file)");
    }

    Point2 corner_point(const Environment &env, std::string_view corner)
    {
        const BBox &b = env.bbox;
        if (corner == "bottom_left")
            return b.min;
        if (corner == "top_right")
            return b.max;
        if (corner == "bottom_right")
            return {b.max.x, b.min.y};
        if (corner == "top_left")
            return {b.min.x, b.max.y};
        if (corner == "center")
            return {0.5 * (b.min.x + b.max.x), 0.5 * (b.min.y + b.max.y)};
        throw ConfigError("unknown corner '" + std::string(corner) +
                          "' (expected bottom_left, bottom_right, top_left, top_right, center)");
    }
}
