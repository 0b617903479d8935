#include "spikepath/protocol.hpp"

#include <string>

namespace spikepath
{
    void TimingParams::validate() const
    {
        const Millis all[] = {tau_proc_0, tau_proc_plus, dt_i, dt_e, tau_inh, tau_spike, tau_ref, dt_dendritic};
        for (const Millis v : all)
            if (!(v >= 0.0))
                throw ConfigError("timing parameters must be non-negative");
        if (!(dt_i < dt_e))
            throw ConfigError("timing requires dt_I < dt_E");
        if (!(tau_proc_plus < tau_proc_0))
            throw ConfigError("timing requires tau_proc_plus < tau_proc_0");
    }

    TagWindow tag_window(const TimingParams &tp)
    {
        TagWindow w;
        w.latest = 2.0 * tp.e_travel() + tp.tau_proc_plus + tp.tau_spike;
        w.earliest_e = 2.0 * tp.e_travel() + tp.tau_spike;
        w.earliest_i = tp.e_travel() + tp.tau_spike + tp.i_travel();
        return w;
    }

    std::string_view to_string(MessageKind k) noexcept { return k == MessageKind::E ? "E" : "I"; }

    std::string_view to_string(InhibitionMode m) noexcept
    {
        switch (m)
        {
        case InhibitionMode::global:
            return "global";
        case InhibitionMode::local:
            return "local";
        case InhibitionMode::none:
            return "none";
        }
        return "none";
    }

    std::string_view to_string(NeuronState s) noexcept
    {
        switch (s)
        {
        case NeuronState::resting:
            return "resting";
        case NeuronState::processing:
            return "processing";
        case NeuronState::spiking:
            return "spiking";
        case NeuronState::refractory:
            return "refractory";
        case NeuronState::inhibited:
            return "inhibited";
        }
        return "resting";
    }

    InhibitionMode parse_inhibition_mode(std::string_view s)
    {
        if (s == "global")
            return InhibitionMode::global;
        if (s == "local")
            return InhibitionMode::local;
        if (s == "none")
            return InhibitionMode::none;
        throw ConfigError("unknown inhibition mode '" + std::string(s) + "' (expected global, local or none)");
    }

    namespace
    {
        void enter(Transition &t, NeuronState s, Millis now)
        {
            t.next.state = s;
            t.next.state_entered_at = now;
        }

        void schedule(Transition &t, Millis at)
        {
            t.timer = {TimerAction::schedule, at};
        }

        void cancel(Transition &t)
        {
            t.timer = {TimerAction::cancel, 0.0};
            t.next.pending_timer.reset();
        }

        void become_inhibited(Transition &t, Millis now, const TimingParams &tp)
        {
            enter(t, NeuronState::inhibited, now);
            schedule(t, now + tp.tau_inh);
        }

        void start_processing(Transition &t, Millis now, const TimingParams &tp)
        {
            enter(t, NeuronState::processing, now);
            schedule(t, now + tp.processing_delay(t.next.tagged));
        }

        bool within(Millis offset, Millis earliest, Millis latest) noexcept
        {
            return offset >= earliest - time_slack && offset <= latest + time_slack;
        }
    }

    Transition inject(const NeuronRuntime &nr, Millis now, const TimingParams &tp)
    {
        Transition t{nr, {}, false, {}};
        if (nr.state == NeuronState::resting && !nr.spiked_this_iteration)
            start_processing(t, now, tp);
        return t;
    }

    Transition on_deliver(const NeuronRuntime &nr, MessageKind kind, Millis now, const TimingParams &tp,
                          const TagWindow &win)
    {
        Transition t{nr, {}, false, {}};
        const bool excitatory = kind == MessageKind::E;

        switch (nr.state)
        {
        case NeuronState::resting:
            if (!excitatory)
                become_inhibited(t, now, tp);
            else if (!nr.spiked_this_iteration)
                start_processing(t, now, tp);
            break;
        case NeuronState::processing:
            // An E does not restart the processing timer.
            if (!excitatory)
                become_inhibited(t, now, tp);
            break;
        case NeuronState::spiking:
        case NeuronState::refractory:
            break;
        case NeuronState::inhibited:
            if (!excitatory)
                become_inhibited(t, now, tp);
            else if (nr.tagged && !nr.spiked_this_iteration)
                start_processing(t, now, tp);
            break;
        }

        if (nr.last_e_sent_at)
        {
            const Millis offset = now - *nr.last_e_sent_at;
            if (excitatory && within(offset, win.earliest_e, win.latest))
                t.next.saw_early_e = true;
            if (!excitatory && within(offset, win.earliest_i, win.latest))
                t.next.saw_early_i = true;
        }
        if (!t.next.tagged && is_tag_condition_met(t.next))
        {
            t.next.tagged = true;
            t.became_tagged = true;
        }
        return t;
    }

    Transition on_timer(const NeuronRuntime &nr, Millis now, const TimingParams &tp, InhibitionMode mode)
    {
        Transition t{nr, {}, false, {}};
        t.next.pending_timer.reset();
        switch (nr.state)
        {
        case NeuronState::processing:
            enter(t, NeuronState::spiking, now);
            schedule(t, now + tp.tau_spike);
            break;
        case NeuronState::spiking:
            t.next.last_e_sent_at = now;
            t.next.saw_early_i = false;
            t.next.saw_early_e = false;
            t.next.spiked_this_iteration = true;
            t.next.spike_time = now;
            t.emissions.push_back({MessageKind::E, Recipients::neighbours});
            if (nr.tagged && mode != InhibitionMode::none)
                t.emissions.push_back({MessageKind::I, mode == InhibitionMode::global ? Recipients::all_but_sender
                                                                                      : Recipients::neighbours});
            enter(t, NeuronState::refractory, now);
            schedule(t, now + tp.tau_ref);
            break;
        case NeuronState::refractory:
        case NeuronState::inhibited:
            enter(t, NeuronState::resting, now);
            cancel(t);
            break;
        case NeuronState::resting:
            cancel(t);
            break;
        }
        return t;
    }

    bool is_tag_condition_met(const NeuronRuntime &nr) noexcept
    {
        return nr.last_e_sent_at.has_value() && nr.saw_early_i && nr.saw_early_e;
    }

    NeuronRuntime reset_for_iteration(const NeuronRuntime &nr) noexcept
    {
        NeuronRuntime fresh;
        fresh.tagged = nr.tagged;
        return fresh;
    }
}
