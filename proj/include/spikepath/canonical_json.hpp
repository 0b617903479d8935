#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace spikepath
{
    using Json = nlohmann::json;

    // Round to `digits` significant decimal digits.
    double round_significant(double v, int digits = 9);

    // Copy with every float rounded to 9 significant digits. Object keys are already
    // sorted by nlohmann's default map.
    Json canonicalize(const Json &j);

    // Canonical text: rounded floats, sorted keys, 2-space indent, trailing newline.
    std::string canonical_dump(const Json &j);

    std::uint64_t fnv1a64(std::string_view bytes) noexcept;
    std::string hex64(std::uint64_t v);
    inline std::string content_hash(std::string_view bytes) { return hex64(fnv1a64(bytes)); }
}
