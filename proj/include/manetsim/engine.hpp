#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "manetsim/types.hpp"

namespace manetsim {

/// Programming-error fault raised by the event queue (scheduling in the
/// past, cancelling a handle it never issued). Not meant to be recovered
/// from within a run.
class EngineFault : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Opaque ticket returned by EventQueue::schedule; permits cancellation.
class EventHandle {
  public:
    EventHandle() = default;

  private:
    explicit EventHandle(std::uint64_t seq) : seq_(seq), issued_(true) {}
    std::uint64_t seq_ = 0;
    bool issued_ = false;
    friend class EventQueue;
};

/// Deterministic discrete-event scheduler for one simulation run.
///
/// Events are dispatched in (fire_at, insertion sequence) order: equal
/// timestamps break ties FIFO. A cancelled event never fires; no event
/// fires twice. All state is per-instance, so independent runs may live
/// in separate EventQueue objects concurrently.
class EventQueue {
  public:
    using Action = std::function<void()>;

    /// Enqueue an action at absolute time `fire_at` (must be >= now()).
    EventHandle schedule(SimTime fire_at, Action action);

    /// Prevent the event from firing. No-op if it already fired or was
    /// already cancelled; faults on a handle this queue never issued.
    void cancel(EventHandle h);

    /// Dispatch every event with fire_at <= horizon, in order. Returns
    /// the number of events dispatched by this call.
    std::size_t run_until(SimTime horizon);

    SimTime now() const { return now_; }
    bool empty() const { return live_ == 0; }

  private:
    enum class State : std::uint8_t { Pending, Fired, Cancelled };

    struct Entry {
        SimTime fire_at;
        std::uint64_t seq;
        Action action;
    };
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
    std::vector<State> states_;
    std::uint64_t live_ = 0;
    SimTime now_ = 0.0;
};

}  // namespace manetsim
