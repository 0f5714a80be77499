#include "manetsim/engine.hpp"

#include <cmath>
#include <utility>

namespace manetsim {

EventHandle EventQueue::schedule(SimTime fire_at, Action action) {
    if (!std::isfinite(fire_at) || fire_at < now_) {
        throw EngineFault("schedule: fire_at is in the past or not finite");
    }
    const std::uint64_t seq = states_.size();
    states_.push_back(State::Pending);
    queue_.push(Entry{fire_at, seq, std::move(action)});
    ++live_;
    return EventHandle(seq);
}

void EventQueue::cancel(EventHandle h) {
    if (!h.issued_ || h.seq_ >= states_.size()) {
        throw EngineFault("cancel: handle was not issued by this queue");
    }
    State& s = states_[h.seq_];
    if (s == State::Pending) {
        s = State::Cancelled;
        --live_;
    }
    // Fired or already cancelled: no-op.
}

std::size_t EventQueue::run_until(SimTime horizon) {
    std::size_t dispatched = 0;
    while (!queue_.empty() && queue_.top().fire_at <= horizon) {
        Entry e = std::move(const_cast<Entry&>(queue_.top()));
        queue_.pop();
        if (states_[e.seq] != State::Pending) {
            continue;  // cancelled; never fires
        }
        states_[e.seq] = State::Fired;
        --live_;
        now_ = e.fire_at;
        e.action();
        ++dispatched;
    }
    return dispatched;
}

}  // namespace manetsim
