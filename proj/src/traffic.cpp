#include "manetsim/traffic.hpp"

#include <cassert>
#include <set>
#include <utility>

namespace manetsim {

std::vector<Flow> make_random_flows(std::uint32_t n_flows, std::uint32_t n_nodes, double rate,
                                    std::uint32_t packet_size, SimTime start_at, SimTime stop_at,
                                    RngStream& rng) {
    assert(n_flows == 0 || n_nodes >= 2);
    std::vector<Flow> flows;
    flows.reserve(n_flows);
    std::set<std::pair<NodeId, NodeId>> used;
    for (std::uint32_t i = 0; i < n_flows; ++i) {
        NodeId src;
        NodeId dst;
        do {
            src = static_cast<NodeId>(rng.uniform_int(n_nodes));
            dst = static_cast<NodeId>(rng.uniform_int(n_nodes));
        } while (src == dst || used.count({src, dst}) != 0);
        used.insert({src, dst});
        flows.push_back(Flow{i, src, dst, rate, packet_size, start_at, stop_at});
    }
    return flows;
}

TrafficManager::TrafficManager(std::vector<Flow> flows, std::int32_t ttl, EventQueue& engine,
                               MetricsCollector& metrics, EmitFn emit, std::uint64_t& uid_counter)
    : flows_(std::move(flows)),
      ttl_(ttl),
      engine_(engine),
      metrics_(metrics),
      emit_(std::move(emit)),
      uid_counter_(uid_counter) {
    for (const Flow& f : flows_) {
        metrics_.register_flow(f.id, f.source, f.sink);
    }
}

void TrafficManager::start() {
    for (std::size_t i = 0; i < flows_.size(); ++i) {
        const Flow& f = flows_[i];
        if (f.start_at < f.stop_at) {
            engine_.schedule(f.start_at, [this, i] { emit(static_cast<std::uint32_t>(i), 0); });
        }
    }
}

void TrafficManager::emit(std::uint32_t flow_index, std::uint64_t k) {
    const Flow& f = flows_[flow_index];
    const SimTime now = engine_.now();

    DataPacket p;
    p.flow = f.id;
    p.uid = ++uid_counter_;
    p.seq_in_flow = k;
    p.src = f.source;
    p.dst = f.sink;
    p.size = f.packet_size;
    p.ttl = ttl_;
    p.created_at = now;
    metrics_.app_send(p, now);
    emit_(std::move(p));

    // Absolute arithmetic keeps emission k at exactly start + k/rate.
    const SimTime next = f.start_at + static_cast<double>(k + 1) / f.rate;
    if (next < f.stop_at) {
        engine_.schedule(next, [this, flow_index, k] { emit(flow_index, k + 1); });
    }
}

}  // namespace manetsim
