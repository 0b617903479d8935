#pragma once

#include <cstdint>
#include <random>

namespace spikepath
{
    // mt19937_64 with a hand-rolled [0,1) conversion. The engine's output sequence is
    // fixed by the standard; std::uniform_real_distribution is not, so it is avoided.
    // Stream order for placement: one draw for x, then one for y, per candidate.
    class PortableRng
    {
    public:
        explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

        // 53 high bits scaled into [0, 1).
        double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

        double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

        std::uint64_t next_u64() { return engine_(); }

    private:
        std::mt19937_64 engine_;
    };
}
