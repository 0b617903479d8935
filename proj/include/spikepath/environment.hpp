#pragma once

#include "spikepath/geometry.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace spikepath
{
    enum class EnvironmentKind
    {
        square,
        circle,
        a_maze,
        t_maze,
        custom,
    };

    std::string_view to_string(EnvironmentKind kind) noexcept;

    // Admissible area is the union of the polygons. Presets live in the unit square.
    struct Environment
    {
        std::string name;
        EnvironmentKind kind = EnvironmentKind::custom;
        std::vector<Polygon> polygons;
        BBox bbox;

        bool contains(Point2 p) const noexcept;

        // Throws ConfigError if the region is empty, a polygon is not simple,
        // or the bbox does not cover every polygon.
        void validate() const;
    };

    const std::vector<std::string> &preset_names();

    // Throws ConfigError naming the available presets for unknown names.
    Environment preset_environment(std::string_view name);

    Environment environment_from_json(const nlohmann::json &j);
    nlohmann::json environment_to_json(const Environment &env);
    Environment load_environment(const std::filesystem::path &path);

    // A preset name, or else a path to an environment file.
    Environment resolve_environment(std::string_view name_or_path);

    // Named anchor inside the bbox: bottom_left, bottom_right, top_left, top_right, center.
    Point2 corner_point(const Environment &env, std::string_view corner);
}
