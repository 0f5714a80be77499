#include "manetsim/aodv.hpp"

#include <algorithm>
#include <cassert>

namespace manetsim {

AodvAgent::AodvAgent(RunServices& services, NodeId self) : sv_(services), self_(self) {}

void AodvAgent::start() {
    // On-demand: nothing to do until data shows up.
}

const AodvEntry* AodvAgent::valid_route(NodeId destination) const {
    const auto it = table_.find(destination);
    if (it == table_.end()) return nullptr;
    const AodvEntry& e = it->second;
    if (!e.valid || e.expires_at <= sv_.engine.now()) return nullptr;
    return &e;
}

std::optional<NodeId> AodvAgent::next_hop(NodeId destination) const {
    const AodvEntry* e = valid_route(destination);
    if (e == nullptr) return std::nullopt;
    return e->next_hop;
}

void AodvAgent::install_route(NodeId destination, NodeId via, std::uint32_t hops,
                              std::uint32_t seq, double lifetime) {
    const SimTime now = sv_.engine.now();
    auto it = table_.find(destination);
    if (it == table_.end()) {
        table_[destination] = AodvEntry{destination, via, hops, seq, now + lifetime, true};
        return;
    }
    AodvEntry& e = it->second;
    const bool fresher = seq > e.dest_sequence;
    const bool as_fresh = seq == e.dest_sequence;
    if (fresher || (as_fresh && (!e.valid || hops < e.hop_count)) ||
        (as_fresh && hops == e.hop_count && via == e.next_hop)) {
        e.next_hop = via;
        e.hop_count = hops;
        e.dest_sequence = std::max(e.dest_sequence, seq);
        e.valid = true;
        e.expires_at = std::max(e.expires_at, now + lifetime);
    }
}

void AodvAgent::refresh_route(AodvEntry& e, double lifetime) {
    e.expires_at = std::max(e.expires_at, sv_.engine.now() + lifetime);
}

void AodvAgent::accept_from_app(DataPacket p) {
    forward_data(std::move(p), /*allow_rerr=*/true);
}

void AodvAgent::accept_from_network(DataPacket p) {
    if (p.ttl <= 0) {
        sv_.metrics.data_drop(p, self_, TraceLayer::Rtr, DropReason::Ttl, sv_.engine.now());
        return;
    }
    p.ttl -= 1;
    forward_data(std::move(p), /*allow_rerr=*/true);
}

void AodvAgent::forward_data(DataPacket p, bool allow_rerr) {
    const auto it = table_.find(p.dst);
    AodvEntry* e = it == table_.end() ? nullptr : &it->second;
    const bool usable = e != nullptr && e->valid && e->expires_at > sv_.engine.now();
    if (usable) {
        refresh_route(*e, sv_.cfg.aodv_active_route_timeout);
        sv_.metrics.data_forward(p, self_, sv_.engine.now());
        Frame f;
        f.uid = p.uid;
        f.sender = self_;
        f.broadcast = false;
        f.next_hop = e->next_hop;
        f.size = p.size;
        f.type = PacketType::Cbr;
        f.trace_src = p.src;
        f.trace_dst = p.dst;
        f.payload = std::move(p);
        sv_.channel.transmit(std::move(f));
        return;
    }
    if (p.src == self_) {
        buffer_and_discover(std::move(p));
        return;
    }
    // Intermediate node without a route: drop and report the break
    // upstream so sources stop using us.
    const NodeId dst = p.dst;
    sv_.metrics.data_drop(p, self_, TraceLayer::Rtr, DropReason::Nrte, sv_.engine.now());
    if (allow_rerr) {
        Rerr err;
        err.unreachable.emplace_back(dst, e != nullptr ? e->dest_sequence : 0);
        send_rerr(std::move(err));
    }
}

void AodvAgent::buffer_and_discover(DataPacket p) {
    Discovery& d = discovery_[p.dst];
    if (d.buffer.size() >= sv_.cfg.aodv_pending_buffer_capacity) {
        sv_.metrics.data_drop(d.buffer.front(), self_, TraceLayer::Rtr, DropReason::Nrte,
                              sv_.engine.now());
        d.buffer.pop_front();
    }
    const NodeId dst = p.dst;
    d.buffer.push_back(std::move(p));
    if (d.attempts == 0) {
        d.attempts = 1;
        d.wait = sv_.cfg.aodv_retry_wait;
        send_rreq(dst);
        d.retry = sv_.engine.schedule(sv_.engine.now() + d.wait,
                                      [this, dst] { retry_timer_fired(dst); });
    }
}

void AodvAgent::originate_rreq(NodeId destination) {
    Discovery& d = discovery_[destination];
    if (d.attempts == 0) {
        d.attempts = 1;
        d.wait = sv_.cfg.aodv_retry_wait;
        send_rreq(destination);
        d.retry = sv_.engine.schedule(sv_.engine.now() + d.wait,
                                      [this, destination] { retry_timer_fired(destination); });
    }
}

void AodvAgent::send_rreq(NodeId destination) {
    own_sequence_ += 1;
    rreq_id_ += 1;
    seen_rreq_.insert({self_, rreq_id_});

    Rreq r;
    r.origin = self_;
    r.origin_sequence = own_sequence_;
    r.rreq_id = rreq_id_;
    r.destination = destination;
    const auto it = table_.find(destination);
    r.dest_sequence_known = it == table_.end() ? 0 : it->second.dest_sequence;
    r.hop_count = 0;

    Frame f;
    f.uid = sv_.next_uid();
    f.sender = self_;
    f.broadcast = true;
    f.size = kRreqFrameBytes;
    f.type = PacketType::Rreq;
    f.trace_src = self_;
    f.trace_dst = destination;
    f.payload = r;
    sv_.metrics.control_send(f, sv_.engine.now());
    sv_.channel.transmit(std::move(f));
}

void AodvAgent::retry_timer_fired(NodeId destination) {
    auto it = discovery_.find(destination);
    if (it == discovery_.end()) return;
    Discovery& d = it->second;
    if (d.attempts > sv_.cfg.aodv_rreq_retries) {
        drop_buffer(destination);
        return;
    }
    d.attempts += 1;
    d.wait *= 2.0;  // doubles per retry
    send_rreq(destination);
    d.retry = sv_.engine.schedule(sv_.engine.now() + d.wait,
                                  [this, destination] { retry_timer_fired(destination); });
}

void AodvAgent::flush_buffer(NodeId destination) {
    auto it = discovery_.find(destination);
    if (it == discovery_.end()) return;
    std::deque<DataPacket> pending = std::move(it->second.buffer);
    sv_.engine.cancel(it->second.retry);
    discovery_.erase(it);
    for (auto& p : pending) {
        forward_data(std::move(p), /*allow_rerr=*/true);
    }
}

void AodvAgent::drop_buffer(NodeId destination) {
    auto it = discovery_.find(destination);
    if (it == discovery_.end()) return;
    for (const auto& p : it->second.buffer) {
        sv_.metrics.data_drop(p, self_, TraceLayer::Rtr, DropReason::Nrte, sv_.engine.now());
    }
    discovery_.erase(it);
}

void AodvAgent::handle_rreq(Rreq r, NodeId from) {
    if (!seen_rreq_.insert({r.origin, r.rreq_id}).second) {
        return;  // one rebroadcast per flood per node
    }
    install_route(r.origin, from, r.hop_count + 1, r.origin_sequence,
                  sv_.cfg.aodv_reverse_route_lifetime);

    if (r.destination == self_) {
        own_sequence_ = std::max(own_sequence_, r.dest_sequence_known);
        Rrep rep;
        rep.destination = self_;
        rep.dest_sequence = own_sequence_;
        rep.hop_count = 0;
        rep.origin = r.origin;
        rep.lifetime = sv_.cfg.aodv_active_route_timeout;
        send_rrep(rep, from);
        return;
    }
    if (const AodvEntry* e = valid_route(r.destination);
        e != nullptr && e->dest_sequence >= r.dest_sequence_known) {
        Rrep rep;
        rep.destination = r.destination;
        rep.dest_sequence = e->dest_sequence;
        rep.hop_count = e->hop_count;
        rep.origin = r.origin;
        rep.lifetime = e->expires_at - sv_.engine.now();
        send_rrep(rep, from);
        return;
    }
    r.hop_count += 1;
    Frame f;
    f.uid = sv_.next_uid();
    f.sender = self_;
    f.broadcast = true;
    f.size = kRreqFrameBytes;
    f.type = PacketType::Rreq;
    f.trace_src = r.origin;
    f.trace_dst = r.destination;
    f.payload = r;
    sv_.metrics.control_send(f, sv_.engine.now());
    sv_.channel.transmit(std::move(f));
}

void AodvAgent::send_rrep(const Rrep& r, NodeId to) {
    Frame f;
    f.uid = sv_.next_uid();
    f.sender = self_;
    f.broadcast = false;
    f.next_hop = to;
    f.size = kRrepFrameBytes;
    f.type = PacketType::Rrep;
    f.trace_src = r.destination;
    f.trace_dst = r.origin;
    f.payload = r;
    sv_.metrics.control_send(f, sv_.engine.now());
    sv_.channel.transmit(std::move(f));
}

void AodvAgent::handle_rrep(const Rrep& r, NodeId from) {
    install_route(r.destination, from, r.hop_count + 1, r.dest_sequence, r.lifetime);

    if (r.origin == self_) {
        flush_buffer(r.destination);
        return;
    }
    const auto it = table_.find(r.origin);
    AodvEntry* rev = it == table_.end() ? nullptr : &it->second;
    if (rev == nullptr || !rev->valid || rev->expires_at <= sv_.engine.now()) {
        // Reverse path expired before the reply came back.
        Frame f;
        f.uid = sv_.next_uid();
        f.sender = self_;
        f.size = kRrepFrameBytes;
        f.type = PacketType::Rrep;
        f.trace_src = r.destination;
        f.trace_dst = r.origin;
        f.payload = r;
        sv_.metrics.control_drop(f, self_, TraceLayer::Rtr, DropReason::Nrte, sv_.engine.now());
        return;
    }
    refresh_route(*rev, sv_.cfg.aodv_reverse_route_lifetime);
    Rrep fwd = r;
    fwd.hop_count += 1;
    send_rrep(fwd, rev->next_hop);
}

void AodvAgent::handle_link_break(NodeId dead) {
    Rerr err;
    for (auto& [dest, e] : table_) {
        if (!e.valid || e.next_hop != dead) continue;
        e.valid = false;
        e.dest_sequence += 1;
        err.unreachable.emplace_back(dest, e.dest_sequence);
    }
    if (!err.unreachable.empty()) {
        send_rerr(std::move(err));
    }
}

void AodvAgent::send_rerr(Rerr r) {
    Frame f;
    f.uid = sv_.next_uid();
    f.sender = self_;
    f.broadcast = true;
    f.size = rerr_frame_bytes(r.unreachable.size());
    f.type = PacketType::Rerr;
    f.trace_src = self_;
    f.trace_dst = -1;
    f.payload = std::move(r);
    sv_.metrics.control_send(f, sv_.engine.now());
    sv_.channel.transmit(std::move(f));
}

void AodvAgent::handle_rerr(const Rerr& r, NodeId from) {
    Rerr forward;
    for (const auto& [dest, seq] : r.unreachable) {
        const auto it = table_.find(dest);
        if (it == table_.end()) continue;
        AodvEntry& e = it->second;
        if (!e.valid || e.next_hop != from) continue;
        e.valid = false;
        e.dest_sequence = std::max(e.dest_sequence, seq);
        forward.unreachable.emplace_back(dest, e.dest_sequence);
    }
    if (!forward.unreachable.empty()) {
        send_rerr(std::move(forward));
    }
}

void AodvAgent::handle_control(const Frame& f) {
    if (const auto* rreq = std::get_if<Rreq>(&f.payload)) {
        handle_rreq(*rreq, f.sender);
    } else if (const auto* rrep = std::get_if<Rrep>(&f.payload)) {
        handle_rrep(*rrep, f.sender);
    } else if (const auto* rerr = std::get_if<Rerr>(&f.payload)) {
        handle_rerr(*rerr, f.sender);
    }
}

void AodvAgent::handle_link_failure(NodeId dead, const Frame& f) {
    handle_link_break(dead);
    if (f.type == PacketType::Cbr) {
        DataPacket p = std::get<DataPacket>(f.payload);
        if (p.src == self_) {
            // Source: routes through the dead hop just went invalid, so
            // this buffers and starts a fresh discovery.
            forward_data(std::move(p), /*allow_rerr=*/true);
        } else {
            // The break handler already reported this destination.
            sv_.metrics.data_drop(p, self_, TraceLayer::Rtr, DropReason::Nrte, sv_.engine.now());
        }
    } else if (f.type == PacketType::Rrep) {
        sv_.metrics.control_drop(f, self_, TraceLayer::Rtr, DropReason::Nrte, sv_.engine.now());
    }
}

}  // namespace manetsim
