#pragma once

#include "spikepath/protocol.hpp"
#include "spikepath/types.hpp"

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

namespace spikepath
{
    // Lower value runs first among events at the same instant.
    enum class EventPriority : std::uint8_t
    {
        deliver_i = 0,
        deliver_e = 1,
        timer = 2,
    };

    struct Event
    {
        Millis time = 0.0;
        EventPriority priority = EventPriority::timer;
        std::uint64_t seq = 0;
        NodeId node;       // recipient, or owner of the timer
        NodeId from;       // sender; equals node for timers
        TimerHandle handle = 0;

        bool is_timer() const noexcept { return priority == EventPriority::timer; }
        MessageKind kind() const noexcept
        {
            return priority == EventPriority::deliver_i ? MessageKind::I : MessageKind::E;
        }
    };

    // Total order (time, priority, seq).
    inline bool runs_before(const Event &a, const Event &b) noexcept
    {
        if (a.time != b.time)
            return a.time < b.time;
        if (a.priority != b.priority)
            return a.priority < b.priority;
        return a.seq < b.seq;
    }

    class EventQueue
    {
    public:
        void schedule_delivery(Millis time, MessageKind kind, NodeId to, NodeId from);
        void schedule_timer(Millis time, NodeId owner, TimerHandle handle);

        // Minimum under runs_before; nullopt once the queue is drained.
        std::optional<Event> pop_next();

        bool empty() const noexcept { return heap_.empty(); }
        std::size_t size() const noexcept { return heap_.size(); }
        std::uint64_t scheduled() const noexcept { return next_seq_; }

        // Drops pending events; the sequence counter keeps counting.
        void clear();

    private:
        struct Later
        {
            bool operator()(const Event &a, const Event &b) const noexcept { return runs_before(b, a); }
        };

        void push(Event ev);

        std::priority_queue<Event, std::vector<Event>, Later> heap_;
        std::uint64_t next_seq_ = 0;
    };
}
