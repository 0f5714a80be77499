#include "manetsim/channel.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace manetsim {

Channel::Channel(const RadioConfig& cfg, std::size_t n_nodes, EventQueue& engine,
                 RngStream& jitter_rng, MetricsCollector& metrics, PositionFn position,
                 DeliverFn deliver, LinkFailFn link_fail)
    : cfg_(cfg),
      n_(n_nodes),
      engine_(engine),
      jitter_(jitter_rng),
      metrics_(metrics),
      position_(std::move(position)),
      deliver_(std::move(deliver)),
      link_fail_(std::move(link_fail)),
      ports_(n_nodes),
      receptions_(cfg.collisions_enabled ? n_nodes : 0) {}

double Channel::serialization_delay(std::uint32_t size_bytes) const {
    return static_cast<double>(size_bytes) * 8.0 / cfg_.bandwidth;
}

bool Channel::in_range(NodeId a, NodeId b, SimTime t) const {
    return distance(position_(a, t), position_(b, t)) <= cfg_.range;
}

std::vector<NodeId> Channel::neighbors(NodeId node, SimTime t) const {
    std::vector<NodeId> out;
    const Vec2 here = position_(node, t);
    for (NodeId other = 0; other < n_; ++other) {
        if (other == node) continue;
        if (distance(here, position_(other, t)) <= cfg_.range) {
            out.push_back(other);
        }
    }
    return out;
}

void Channel::transmit(Frame f) {
    assert(f.size > 0);
    const SimTime now = engine_.now();
    if (!f.broadcast && !in_range(f.sender, f.next_hop, now)) {
        // Synchronous link-break detection signal.
        link_fail_(f.sender, f.next_hop, f);
        return;
    }
    Port& port = ports_[f.sender];
    if (port.busy) {
        if (port.queue.size() >= cfg_.ifq_capacity) {
            if (f.type == PacketType::Cbr) {
                metrics_.data_drop(std::get<DataPacket>(f.payload), f.sender, TraceLayer::Mac,
                                   DropReason::Ifq, now);
            } else {
                metrics_.control_drop(f, f.sender, TraceLayer::Mac, DropReason::Ifq, now);
            }
            return;
        }
        port.queue.push_back(std::move(f));
        return;
    }
    begin_transmission(f.sender, std::move(f));
}

void Channel::begin_transmission(NodeId sender, Frame f) {
    Port& port = ports_[sender];
    port.busy = true;
    const SimTime start = engine_.now();
    const double ser = serialization_delay(f.size);
    engine_.schedule(start + ser, [this, sender] { finish_transmission(sender); });

    if (f.broadcast) {
        const double jit =
            cfg_.broadcast_jitter_max > 0.0 ? jitter_.uniform(0.0, cfg_.broadcast_jitter_max) : 0.0;
        const SimTime at = start + jit + ser + cfg_.propagation_delay;
        for (NodeId nb : neighbors(sender, start)) {
            schedule_delivery(nb, f, at);
        }
    } else {
        if (in_range(sender, f.next_hop, start)) {
            schedule_delivery(f.next_hop, f, start + ser + cfg_.propagation_delay);
        } else {
            // Next hop moved out of range while the frame sat queued.
            link_fail_(sender, f.next_hop, f);
        }
    }
}

void Channel::finish_transmission(NodeId sender) {
    Port& port = ports_[sender];
    port.busy = false;
    if (!port.queue.empty()) {
        Frame next = std::move(port.queue.front());
        port.queue.pop_front();
        begin_transmission(sender, std::move(next));
    }
}

void Channel::schedule_delivery(NodeId to, const Frame& f, SimTime at) {
    std::shared_ptr<bool> corrupted;
    if (cfg_.collisions_enabled) {
        corrupted = std::make_shared<bool>(false);
        const SimTime start = at - serialization_delay(f.size);
        auto& active = receptions_[to];
        std::erase_if(active, [&](const Reception& r) { return r.end <= start; });
        for (auto& r : active) {
            // Pairwise overlap at the receiver corrupts both frames.
            if (r.start < at && start < r.end) {
                *r.corrupted = true;
                *corrupted = true;
            }
        }
        active.push_back(Reception{start, at, corrupted});
    }
    engine_.schedule(at, [this, to, f, corrupted] {
        if (corrupted && *corrupted) {
            if (f.type == PacketType::Cbr) {
                metrics_.data_drop(std::get<DataPacket>(f.payload), to, TraceLayer::Mac,
                                   DropReason::Col, engine_.now());
            } else {
                metrics_.control_drop(f, to, TraceLayer::Mac, DropReason::Col, engine_.now());
            }
            return;
        }
        deliver_(to, f);
    });
}

}  // namespace manetsim
