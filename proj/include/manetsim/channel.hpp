#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "manetsim/engine.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/rng.hpp"
#include "manetsim/types.hpp"
#include "manetsim/wire.hpp"

namespace manetsim {

struct RadioConfig {
    double range = 250.0;
    double bandwidth = 2'000'000.0;
    double broadcast_jitter_max = 0.01;
    bool collisions_enabled = false;
    double propagation_delay = 1e-6;
    std::uint32_t ifq_capacity = 50;
};

/// Unit-disc radio with bandwidth-limited serialization.
///
/// Each node owns a transmitter with a FIFO queue (tail-drop `IFQ`).
/// A frame handed over while the transmitter is idle starts serializing
/// immediately; delivery lands at start + jitter (broadcast only) +
/// size*8/bandwidth + propagation. Broadcasts reach every node within
/// range at transmission start; a unicast whose next hop is out of range
/// raises the sender's link-failure callback, which is the protocols'
/// link-break detection signal.
class Channel {
  public:
    using PositionFn = std::function<Vec2(NodeId, SimTime)>;
    using DeliverFn = std::function<void(NodeId to, const Frame&)>;
    using LinkFailFn = std::function<void(NodeId sender, NodeId dead, const Frame&)>;

    Channel(const RadioConfig& cfg, std::size_t n_nodes, EventQueue& engine,
            RngStream& jitter_rng, MetricsCollector& metrics, PositionFn position,
            DeliverFn deliver, LinkFailFn link_fail);

    /// All other nodes within `range` of `node` at time t, ascending id.
    std::vector<NodeId> neighbors(NodeId node, SimTime t) const;

    bool in_range(NodeId a, NodeId b, SimTime t) const;

    /// Hand a frame to the sender's transmitter at the current time.
    void transmit(Frame f);

    double serialization_delay(std::uint32_t size_bytes) const;

  private:
    struct Reception {
        SimTime start;
        SimTime end;
        std::shared_ptr<bool> corrupted;
    };
    struct Port {
        bool busy = false;
        std::deque<Frame> queue;
    };

    void begin_transmission(NodeId sender, Frame f);
    void finish_transmission(NodeId sender);
    void schedule_delivery(NodeId to, const Frame& f, SimTime at);

    RadioConfig cfg_;
    std::size_t n_;
    EventQueue& engine_;
    RngStream& jitter_;
    MetricsCollector& metrics_;
    PositionFn position_;
    DeliverFn deliver_;
    LinkFailFn link_fail_;
    std::vector<Port> ports_;
    std::vector<std::vector<Reception>> receptions_;  // per receiver, collision model
};

}  // namespace manetsim
