#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace spikepath
{
    // Milliseconds of simulated time.
    using Millis = double;

    // Dense node index, stable for the lifetime of a network.
    struct NodeId
    {
        std::uint32_t value = 0;

        constexpr std::size_t index() const noexcept { return value; }
        constexpr auto operator<=>(const NodeId &) const = default;
    };

    constexpr NodeId node(std::size_t i) noexcept { return NodeId{static_cast<std::uint32_t>(i)}; }

    using NodeSet = std::set<NodeId>;
    using Adjacency = std::vector<std::vector<NodeId>>;

    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Rejection sampling could not place every neuron inside the region.
    class PlacementExhausted : public Error
    {
    public:
        PlacementExhausted(std::size_t placed, std::size_t requested)
            : Error("placement exhausted after " + std::to_string(placed) + " of " +
                    std::to_string(requested) + " points"),
              placed(placed), requested(requested)
        {
        }
        std::size_t placed;
        std::size_t requested;
    };

    class Unreachable : public Error
    {
    public:
        using Error::Error;
    };

    // An iteration hit its time budget with events still pending.
    class IterationTimeout : public Error
    {
    public:
        using Error::Error;
    };

    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    class HashMismatch : public Error
    {
    public:
        using Error::Error;
    };
}
