#pragma once

#include <cstdint>

#include "manetsim/channel.hpp"
#include "manetsim/config.hpp"
#include "manetsim/engine.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/rng.hpp"
#include "manetsim/wire.hpp"

namespace manetsim {

/// Per-run services a protocol instance works against. One RunServices is
/// shared by all nodes of a run; nothing here is process-global.
struct RunServices {
    EventQueue& engine;
    Channel& channel;
    MetricsCollector& metrics;
    RngStream& protocol_rng;
    const ScenarioConfig& cfg;
    std::uint64_t& uid_counter;

    std::uint64_t next_uid() { return ++uid_counter; }
};

/// What the simulation expects from a routing protocol instance. One
/// instance per node; invoked only from the event loop.
class RoutingAgent {
  public:
    virtual ~RoutingAgent() = default;

    /// Install self state and schedule initial timers.
    virtual void start() = 0;

    /// Data packet originated by the local application.
    virtual void accept_from_app(DataPacket p) = 0;

    /// Data packet delivered by the channel and addressed to another
    /// node; route or drop it.
    virtual void accept_from_network(DataPacket p) = 0;

    /// Control frame delivered by the channel.
    virtual void handle_control(const Frame& f) = 0;

    /// The channel failed to unicast `f` because `dead` was out of range.
    virtual void handle_link_failure(NodeId dead, const Frame& f) = 0;
};

}  // namespace manetsim
