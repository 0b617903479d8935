#pragma once

#include "spikepath/types.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace spikepath
{
    // Delay constants of the neuron model, all in ms. Defaults are the reference values.
    struct TimingParams
    {
        Millis tau_proc_0 = 10.0;   // untagged processing delay
        Millis tau_proc_plus = 5.0; // tagged processing delay
        Millis dt_i = 2.0;          // axonal delay of I messages
        Millis dt_e = 5.0;          // axonal delay of E messages
        Millis tau_inh = 10.0;      // inhibition recovery
        Millis tau_spike = 0.1;     // spiking -> emission
        Millis tau_ref = 2.0;       // refractory period
        Millis dt_dendritic = 1.0;  // added to every delivery

        // Throws ConfigError unless all delays are >= 0, dt_i < dt_e and
        // tau_proc_plus < tau_proc_0.
        void validate() const;

        Millis e_travel() const noexcept { return dt_e + dt_dendritic; }
        Millis i_travel() const noexcept { return dt_i + dt_dendritic; }
        Millis processing_delay(bool tagged) const noexcept { return tagged ? tau_proc_plus : tau_proc_0; }

        // Emission-to-arrival time of the E reply from an untagged neighbour.
        Millis untagged_echo() const noexcept { return 2.0 * e_travel() + tau_spike + tau_proc_0; }
    };

    // Arrival offsets, relative to a neuron's own E emission, that count as an early
    // recurrent reply. latest is inclusive; the earliest_* floors reject messages that
    // cannot be replies to the emission (e.g. an E from a neighbour that fired at the
    // same moment).
    struct TagWindow
    {
        Millis latest = 0.0;
        Millis earliest_e = 0.0;
        Millis earliest_i = 0.0;
    };

    // latest = 2(dt_e + dt_dendritic) + tau_proc_plus + tau_spike
    TagWindow tag_window(const TimingParams &tp);

    // Absolute slack on window comparisons.
    inline constexpr Millis time_slack = 1e-9;

    enum class MessageKind : std::uint8_t
    {
        E,
        I,
    };

    enum class InhibitionMode : std::uint8_t
    {
        global,
        local,
        none,
    };

    enum class NeuronState : std::uint8_t
    {
        resting,
        processing,
        spiking,
        refractory,
        inhibited,
    };

    std::string_view to_string(MessageKind k) noexcept;
    std::string_view to_string(InhibitionMode m) noexcept;
    std::string_view to_string(NeuronState s) noexcept;
    InhibitionMode parse_inhibition_mode(std::string_view s);

    using TimerHandle = std::uint64_t;

    struct NeuronRuntime
    {
        NeuronState state = NeuronState::resting;
        bool tagged = false;
        Millis state_entered_at = 0.0;
        std::optional<TimerHandle> pending_timer;
        std::optional<Millis> last_e_sent_at;
        bool saw_early_i = false;
        bool saw_early_e = false;
        bool spiked_this_iteration = false;
        std::optional<Millis> spike_time;

        bool operator==(const NeuronRuntime &) const = default;
    };

    enum class TimerAction : std::uint8_t
    {
        keep,     // leave any pending timer alone
        cancel,   // drop the pending timer
        schedule, // replace the pending timer with one at `at`
    };

    struct TimerRequest
    {
        TimerAction action = TimerAction::keep;
        Millis at = 0.0;
    };

    enum class Recipients : std::uint8_t
    {
        neighbours,
        all_but_sender,
    };

    struct Emission
    {
        MessageKind kind;
        Recipients recipients;

        bool operator==(const Emission &) const = default;
    };

    // Result of one transition: the successor runtime plus the side effects the
    // engine has to carry out.
    struct Transition
    {
        NeuronRuntime next;
        TimerRequest timer;
        bool became_tagged = false;
        std::vector<Emission> emissions;
    };

    // Forced resting -> processing of the source at the start of an iteration.
    Transition inject(const NeuronRuntime &nr, Millis now, const TimingParams &tp);

    // Message arrival. Applies the state table, then the tag bookkeeping, which does
    // not depend on the state.
    Transition on_deliver(const NeuronRuntime &nr, MessageKind kind, Millis now, const TimingParams &tp,
                          const TagWindow &win);

    // Expiry of the neuron's current timer. The caller filters stale timers.
    Transition on_timer(const NeuronRuntime &nr, Millis now, const TimingParams &tp, InhibitionMode mode);

    bool is_tag_condition_met(const NeuronRuntime &nr) noexcept;

    // Back to resting with per-iteration bookkeeping cleared; the tag survives.
    NeuronRuntime reset_for_iteration(const NeuronRuntime &nr) noexcept;
}
