#pragma once

#include "spikepath/event_queue.hpp"
#include "spikepath/network.hpp"
#include "spikepath/protocol.hpp"
#include "spikepath/types.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace spikepath
{
    struct RunConfig
    {
        TimingParams timing;
        InhibitionMode mode = InhibitionMode::global;
        NodeId source;
        std::vector<NodeId> targets;
        std::optional<std::size_t> max_iterations;    // default: network size
        std::optional<Millis> t_max_per_iteration;     // default: 10 n (tau_proc_0 + dt_e)

        std::size_t iteration_budget(std::size_t n) const;
        Millis time_budget(std::size_t n) const;

        // Throws ConfigError for bad timing, ids out of range or an empty target list.
        void validate(std::size_t n) const;
    };

    struct IterationRecord
    {
        std::size_t index = 0; // 1-based
        std::vector<std::optional<Millis>> spike_time; // emission time, t = 0 at source injection
        NodeSet tagged_after;
        NodeSet newly_tagged;
        std::optional<Millis> ttt; // first target emission
        Millis quiesced_at = 0.0;
        std::size_t emissions = 0;
        std::size_t deliveries = 0;

        NodeSet spiked() const;
        std::size_t spiked_count() const noexcept;
    };

    struct RunResult
    {
        RunConfig config;
        std::vector<IterationRecord> iterations;
        bool converged = false;
        std::optional<std::size_t> convergence_iteration; // 0 when the source is itself a target
        NodeSet readout_spiking;
        std::optional<IterationRecord> readout_record;
    };

    // Observer for executed events (stale timers are not reported).
    using TraceFn = std::function<void(std::size_t iteration, const Event &)>;

    // Event times are kept on a 1 ns lattice so that mathematically equal instants
    // reached along different addition orders compare equal.
    Millis on_time_lattice(Millis t) noexcept;

    // Message fan-out of one emission instant: E to out-neighbours after dt_e + dt_dendritic;
    // for tagged senders an I after dt_i + dt_dendritic to neighbours (local) or to
    // every other node (global).
    void emit_messages(EventQueue &queue, NodeId from, std::span<const Emission> emissions, Millis at,
                       const Adjacency &adj, const TimingParams &tp);
    std::vector<Event> emit_messages(NodeId from, bool tagged, Millis at, const Adjacency &adj, const RunConfig &cfg);

    std::vector<Emission> emissions_for(bool tagged, InhibitionMode mode);

    // Owns the per-neuron runtimes of one run; tags persist across iterations.
    class Simulation
    {
    public:
        Simulation(const SpatialNetwork &net, RunConfig cfg);

        // One forward wave from the source until the queue drains. Throws IterationTimeout
        // if the time budget is reached with events pending.
        IterationRecord run_iteration(std::size_t index);

        void set_trace(TraceFn fn) { trace_ = std::move(fn); }

        const std::vector<NeuronRuntime> &runtimes() const noexcept { return runtimes_; }
        std::vector<NeuronRuntime> &runtimes() noexcept { return runtimes_; }
        NodeSet tagged() const;
        const RunConfig &config() const noexcept { return cfg_; }

    private:
        void apply(NodeId id, Transition &&t, EventQueue &queue, IterationRecord &rec);

        const SpatialNetwork &net_;
        RunConfig cfg_;
        TagWindow window_;
        std::vector<NeuronRuntime> runtimes_;
        TimerHandle next_handle_ = 1;
        TraceFn trace_;
    };

    // Iterates until the source is tagged, then runs one readout iteration. Throws
    // Unreachable if some target cannot be reached from the source. converged=false
    // when the iteration budget runs out.
    RunResult run_until_converged(const SpatialNetwork &net, const RunConfig &cfg, TraceFn trace = {});
}
