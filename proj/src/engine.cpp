#include "spikepath/engine.hpp"

#include "spikepath/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spikepath
{
    std::size_t RunConfig::iteration_budget(std::size_t n) const { return max_iterations.value_or(n); }

    Millis RunConfig::time_budget(std::size_t n) const
    {
        return t_max_per_iteration.value_or(10.0 * static_cast<double>(n) * (timing.tau_proc_0 + timing.dt_e));
    }

    void RunConfig::validate(std::size_t n) const
    {
        timing.validate();
        if (targets.empty())
            throw ConfigError("at least one target is required");
        if (source.index() >= n)
            throw ConfigError("source id out of range");
        for (const NodeId t : targets)
            if (t.index() >= n)
                throw ConfigError("target id out of range");
        if (t_max_per_iteration && !(*t_max_per_iteration > 0.0))
            throw ConfigError("t_max_per_iteration must be positive");
    }

    NodeSet IterationRecord::spiked() const
    {
        NodeSet out;
        for (std::size_t i = 0; i < spike_time.size(); ++i)
            if (spike_time[i])
                out.insert(node(i));
        return out;
    }

    std::size_t IterationRecord::spiked_count() const noexcept
    {
        return static_cast<std::size_t>(
            std::count_if(spike_time.begin(), spike_time.end(), [](const auto &t) { return t.has_value(); }));
    }

    Millis on_time_lattice(Millis t) noexcept { return std::round(t * 1e6) / 1e6; }

    std::vector<Emission> emissions_for(bool tagged, InhibitionMode mode)
    {
        std::vector<Emission> out{{MessageKind::E, Recipients::neighbours}};
        if (tagged && mode != InhibitionMode::none)
            out.push_back({MessageKind::I,
                           mode == InhibitionMode::global ? Recipients::all_but_sender : Recipients::neighbours});
        return out;
    }

    void emit_messages(EventQueue &queue, NodeId from, std::span<const Emission> emissions, Millis at,
                       const Adjacency &adj, const TimingParams &tp)
    {
        for (const Emission &em : emissions)
        {
            const Millis arrival =
                on_time_lattice(at + (em.kind == MessageKind::E ? tp.e_travel() : tp.i_travel()));
            if (em.recipients == Recipients::neighbours)
            {
                for (const NodeId to : adj[from.index()])
                    queue.schedule_delivery(arrival, em.kind, to, from);
            }
            else
            {
                for (std::size_t i = 0; i < adj.size(); ++i)
                    if (i != from.index())
                        queue.schedule_delivery(arrival, em.kind, node(i), from);
            }
        }
    }

    std::vector<Event> emit_messages(NodeId from, bool tagged, Millis at, const Adjacency &adj, const RunConfig &cfg)
    {
        EventQueue queue;
        const auto emissions = emissions_for(tagged, cfg.mode);
        emit_messages(queue, from, emissions, at, adj, cfg.timing);
        std::vector<Event> out;
        out.reserve(queue.size());
        while (auto ev = queue.pop_next())
            out.push_back(*ev);
        return out;
    }

    Simulation::Simulation(const SpatialNetwork &net, RunConfig cfg)
        : net_(net), cfg_(std::move(cfg)), window_(tag_window(cfg_.timing)), runtimes_(net.size())
    {
        cfg_.validate(net_.size());
        for (const NodeId t : cfg_.targets)
            runtimes_[t.index()].tagged = true;
    }

    NodeSet Simulation::tagged() const
    {
        NodeSet out;
        for (std::size_t i = 0; i < runtimes_.size(); ++i)
            if (runtimes_[i].tagged)
                out.insert(node(i));
        return out;
    }

    void Simulation::apply(NodeId id, Transition &&t, EventQueue &queue, IterationRecord &rec)
    {
        NeuronRuntime &nr = runtimes_[id.index()];
        nr = t.next;
        switch (t.timer.action)
        {
        case TimerAction::keep:
            break;
        case TimerAction::cancel:
            nr.pending_timer.reset();
            break;
        case TimerAction::schedule:
        {
            const TimerHandle h = next_handle_++;
            nr.pending_timer = h;
            queue.schedule_timer(on_time_lattice(t.timer.at), id, h);
            break;
        }
        }
        if (t.became_tagged)
            rec.newly_tagged.insert(id);
        if (!t.emissions.empty())
        {
            ++rec.emissions;
            emit_messages(queue, id, t.emissions, *nr.last_e_sent_at, net_.adjacency, cfg_.timing);
        }
    }

    IterationRecord Simulation::run_iteration(std::size_t index)
    {
        for (auto &nr : runtimes_)
            nr = reset_for_iteration(nr);

        IterationRecord rec;
        rec.index = index;
        EventQueue queue;
        const Millis budget = cfg_.time_budget(net_.size());

        apply(cfg_.source, inject(runtimes_[cfg_.source.index()], 0.0, cfg_.timing), queue, rec);

        Millis last = 0.0;
        while (auto ev = queue.pop_next())
        {
            if (ev->time > budget)
                throw IterationTimeout("iteration " + std::to_string(index) + " still active at t=" +
                                       std::to_string(ev->time) + " ms (budget " + std::to_string(budget) + " ms)");
            NeuronRuntime &nr = runtimes_[ev->node.index()];
            if (ev->is_timer())
            {
                if (nr.pending_timer != ev->handle)
                    continue;
                if (trace_)
                    trace_(index, *ev);
                apply(ev->node, on_timer(nr, ev->time, cfg_.timing, cfg_.mode), queue, rec);
            }
            else
            {
                if (trace_)
                    trace_(index, *ev);
                ++rec.deliveries;
                apply(ev->node, on_deliver(nr, ev->kind(), ev->time, cfg_.timing, window_), queue, rec);
            }
            last = ev->time;
        }

        rec.quiesced_at = last;
        rec.spike_time.resize(runtimes_.size());
        for (std::size_t i = 0; i < runtimes_.size(); ++i)
            rec.spike_time[i] = runtimes_[i].spike_time;
        rec.tagged_after = tagged();
        for (const NodeId t : cfg_.targets)
            if (const auto &st = rec.spike_time[t.index()]; st && (!rec.ttt || *st < *rec.ttt))
                rec.ttt = st;

        for (auto &nr : runtimes_)
            nr = reset_for_iteration(nr);
        return rec;
    }

    RunResult run_until_converged(const SpatialNetwork &net, const RunConfig &cfg, TraceFn trace)
    {
        cfg.validate(net.size());
        const auto dist = bfs_distances(net.adjacency, cfg.source);
        for (const NodeId t : cfg.targets)
            if (dist[t.index()] == unreachable_hops)
                throw Unreachable("target " + std::to_string(t.value) + " is unreachable from source " +
                                  std::to_string(cfg.source.value));

        Simulation sim(net, cfg);
        sim.set_trace(std::move(trace));
        RunResult result;
        result.config = cfg;

        auto source_tagged = [&] { return sim.runtimes()[cfg.source.index()].tagged; };
        const std::size_t budget = cfg.iteration_budget(net.size());

        if (source_tagged())
            result.convergence_iteration = 0;
        for (std::size_t k = 1; !result.convergence_iteration && k <= budget; ++k)
        {
            result.iterations.push_back(sim.run_iteration(k));
            if (source_tagged())
                result.convergence_iteration = k;
        }
        if (result.convergence_iteration)
        {
            result.converged = true;
            result.readout_record = sim.run_iteration(*result.convergence_iteration + 1);
            result.readout_spiking = result.readout_record->spiked();
        }
        return result;
    }
}
