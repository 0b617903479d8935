#include "spikepath/canonical_json.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace spikepath
{
    double round_significant(double v, int digits)
    {
        if (!std::isfinite(v) || v == 0.0)
            return v;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", digits, v);
        return std::strtod(buf, nullptr);
    }

    Json canonicalize(const Json &j)
    {
        switch (j.type())
        {
        case Json::value_t::number_float:
            return round_significant(j.get<double>());
        case Json::value_t::array: {
            Json out = Json::array();
            for (const auto &e : j)
                out.push_back(canonicalize(e));
            return out;
        }
        case Json::value_t::object: {
            Json out = Json::object();
            for (const auto &[k, v] : j.items())
                out[k] = canonicalize(v);
            return out;
        }
        default:
            return j;
        }
    }

    std::string canonical_dump(const Json &j)
    {
        return canonicalize(j).dump(2) + "\n";
    }

    std::uint64_t fnv1a64(std::string_view bytes) noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (const unsigned char c : bytes)
        {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    std::string hex64(std::uint64_t v)
    {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
        return buf;
    }
}
