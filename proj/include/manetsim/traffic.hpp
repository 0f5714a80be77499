#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "manetsim/engine.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/rng.hpp"
#include "manetsim/types.hpp"
#include "manetsim/wire.hpp"

namespace manetsim {

/// One constant-bit-rate datagram stream.
struct Flow {
    std::uint32_t id = 0;
    NodeId source = 0;
    NodeId sink = 0;
    double rate = 4.0;  // packets/second
    std::uint32_t packet_size = 512;
    SimTime start_at = 0.0;
    SimTime stop_at = 0.0;
};

/// Random distinct source/sink pairs (source != sink, no repeated pair),
/// drawn from the traffic stream.
std::vector<Flow> make_random_flows(std::uint32_t n_flows, std::uint32_t n_nodes, double rate,
                                    std::uint32_t packet_size, SimTime start_at, SimTime stop_at,
                                    RngStream& rng);

/// CBR sources. Emission k of a flow fires at start_at + k/rate (absolute
/// arithmetic, no drift) for every k with that time strictly before
/// stop_at, so each flow emits exactly floor((stop-start)*rate) packets.
class TrafficManager {
  public:
    using EmitFn = std::function<void(DataPacket)>;

    TrafficManager(std::vector<Flow> flows, std::int32_t ttl, EventQueue& engine,
                   MetricsCollector& metrics, EmitFn emit, std::uint64_t& uid_counter);

    void start();
    const std::vector<Flow>& flows() const { return flows_; }

  private:
    void emit(std::uint32_t flow_index, std::uint64_t k);

    std::vector<Flow> flows_;
    std::int32_t ttl_;
    EventQueue& engine_;
    MetricsCollector& metrics_;
    EmitFn emit_;
    std::uint64_t& uid_counter_;
};

}  // namespace manetsim
