#include "manetsim/dsdv.hpp"

#include <algorithm>
#include <cassert>

namespace manetsim {

DsdvAgent::DsdvAgent(RunServices& services, NodeId self) : sv_(services), self_(self) {}

void DsdvAgent::start() {
    DsdvEntry self_entry;
    self_entry.destination = self_;
    self_entry.next_hop = self_;
    self_entry.metric = 0;
    self_entry.sequence = own_sequence_;
    self_entry.installed_at = sv_.engine.now();
    table_[self_] = self_entry;

    const double jmax = sv_.cfg.dsdv_update_jitter_max;
    const double jitter = jmax > 0.0 ? sv_.protocol_rng.uniform(0.0, jmax) : 0.0;
    sv_.engine.schedule(jitter, [this] { periodic_update(); });
}

void DsdvAgent::periodic_update() {
    own_sequence_ += 2;
    table_[self_].sequence = own_sequence_;
    send_advert(/*full_dump=*/true);
    // A full dump carries everything; pending incremental flags coalesce.
    changed_.clear();

    ++cycle_;
    const double jmax = sv_.cfg.dsdv_update_jitter_max;
    const double jitter = jmax > 0.0 ? sv_.protocol_rng.uniform(0.0, jmax) : 0.0;
    sv_.engine.schedule(cycle_ * sv_.cfg.dsdv_update_interval + jitter,
                        [this] { periodic_update(); });
}

void DsdvAgent::send_advert(bool full_dump) {
    DsdvAdvert adv;
    adv.origin = self_;
    if (full_dump) {
        adv.entries.reserve(table_.size());
        for (const auto& [dest, e] : table_) {
            adv.entries.push_back(DsdvAdvertEntry{dest, e.metric, e.sequence});
        }
    } else {
        adv.entries.reserve(changed_.size());
        for (NodeId dest : changed_) {
            const auto it = table_.find(dest);
            assert(it != table_.end());
            adv.entries.push_back(DsdvAdvertEntry{dest, it->second.metric, it->second.sequence});
        }
    }
    assert(!adv.entries.empty());

    Frame f;
    f.uid = sv_.next_uid();
    f.sender = self_;
    f.broadcast = true;
    f.size = dsdv_advert_bytes(adv.entries.size());
    f.type = PacketType::Dsdv;
    f.trace_src = self_;
    f.trace_dst = -1;
    f.payload = std::move(adv);
    ++adverts_sent_;
    sv_.metrics.control_send(f, sv_.engine.now());
    sv_.channel.transmit(std::move(f));
}

void DsdvAgent::flag_change(NodeId destination) {
    changed_.insert(destination);
    if (trigger_pending_) return;
    const SimTime now = sv_.engine.now();
    const double dmax = sv_.cfg.dsdv_trigger_delay_max;
    const double delay = dmax > 0.0 ? sv_.protocol_rng.uniform(0.0, dmax) : 0.0;
    SimTime at = now + delay;
    if (ever_triggered_) {
        at = std::max(at, last_trigger_ + sv_.cfg.dsdv_trigger_min_gap);
    }
    trigger_pending_ = true;
    sv_.engine.schedule(at, [this] { triggered_update(); });
}

void DsdvAgent::triggered_update() {
    trigger_pending_ = false;
    if (changed_.empty()) {
        return;  // coalesced into a periodic full dump
    }
    send_advert(/*full_dump=*/false);
    changed_.clear();
    last_trigger_ = sv_.engine.now();
    ever_triggered_ = true;
}

void DsdvAgent::bump_own_sequence(std::uint32_t to_beat) {
    // Someone advertises break news about us; answer with a fresher even
    // sequence so the route resurrects.
    own_sequence_ = to_beat + (to_beat % 2 == 1 ? 1 : 2);
    table_[self_].sequence = own_sequence_;
    flag_change(self_);
}

void DsdvAgent::handle_advert(const DsdvAdvert& adv, NodeId from) {
    const SimTime now = sv_.engine.now();
    for (const auto& [dest, metric, seq] : adv.entries) {
        if (dest == self_) {
            if (seq > own_sequence_) {
                bump_own_sequence(seq);
            }
            continue;
        }
        const std::uint32_t candidate_metric = bump_metric(metric);
        const auto it = table_.find(dest);
        bool adopt = false;
        if (it == table_.end()) {
            adopt = true;
        } else if (seq > it->second.sequence) {
            adopt = true;
        } else if (seq == it->second.sequence && candidate_metric < it->second.metric) {
            adopt = true;
        }
        if (!adopt) continue;
        table_[dest] = DsdvEntry{dest, from, candidate_metric, seq, now};
        flag_change(dest);
    }
}

void DsdvAgent::handle_link_break(NodeId dead) {
    for (auto& [dest, e] : table_) {
        if (dest == self_ || e.next_hop != dead || e.metric == kInfiniteMetric) continue;
        e.metric = kInfiniteMetric;
        e.sequence += 1;  // odd: marked broken by a non-destination
        e.installed_at = sv_.engine.now();
        flag_change(dest);
    }
}

std::optional<NodeId> DsdvAgent::next_hop(NodeId destination) const {
    const auto it = table_.find(destination);
    if (it == table_.end() || it->second.metric == kInfiniteMetric) {
        return std::nullopt;
    }
    return it->second.next_hop;
}

void DsdvAgent::accept_from_app(DataPacket p) {
    forward_data(std::move(p), /*from_app=*/true);
}

void DsdvAgent::accept_from_network(DataPacket p) {
    if (p.ttl <= 0) {
        sv_.metrics.data_drop(p, self_, TraceLayer::Rtr, DropReason::Ttl, sv_.engine.now());
        return;
    }
    p.ttl -= 1;
    forward_data(std::move(p), /*from_app=*/false);
}

void DsdvAgent::forward_data(DataPacket p, bool) {
    const auto nh = next_hop(p.dst);
    if (!nh) {
        // DSDV does not buffer while a route is absent.
        sv_.metrics.data_drop(p, self_, TraceLayer::Rtr, DropReason::Nrte, sv_.engine.now());
        return;
    }
    sv_.metrics.data_forward(p, self_, sv_.engine.now());
    Frame f;
    f.uid = p.uid;
    f.sender = self_;
    f.broadcast = false;
    f.next_hop = *nh;
    f.size = p.size;
    f.type = PacketType::Cbr;
    f.trace_src = p.src;
    f.trace_dst = p.dst;
    f.payload = std::move(p);
    sv_.channel.transmit(std::move(f));
}

void DsdvAgent::handle_control(const Frame& f) {
    handle_advert(std::get<DsdvAdvert>(f.payload), f.sender);
}

void DsdvAgent::handle_link_failure(NodeId dead, const Frame& f) {
    handle_link_break(dead);
    if (f.type == PacketType::Cbr) {
        // Retry once against the updated table; routes through the dead
        // neighbor are now infinite, so this either reroutes or drops.
        forward_data(std::get<DataPacket>(f.payload), /*from_app=*/false);
    }
}

}  // namespace manetsim
