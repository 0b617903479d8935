#include "spikepath/event_queue.hpp"

namespace spikepath
{
    void EventQueue::push(Event ev)
    {
        ev.seq = next_seq_++;
        heap_.push(ev);
    }

    void EventQueue::schedule_delivery(Millis time, MessageKind kind, NodeId to, NodeId from)
    {
        push({time, kind == MessageKind::I ? EventPriority::deliver_i : EventPriority::deliver_e, 0, to, from, 0});
    }

    void EventQueue::schedule_timer(Millis time, NodeId owner, TimerHandle handle)
    {
        push({time, EventPriority::timer, 0, owner, owner, handle});
    }

    std::optional<Event> EventQueue::pop_next()
    {
        if (heap_.empty())
            return std::nullopt;
        Event ev = heap_.top();
        heap_.pop();
        return ev;
    }

    void EventQueue::clear() { heap_ = {}; }
}
