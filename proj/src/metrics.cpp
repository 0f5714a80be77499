#include "manetsim/metrics.hpp"

#include <cassert>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace manetsim {

const char* drop_reason_name(DropReason r) {
    switch (r) {
        case DropReason::Nrte: return "NRTE";
        case DropReason::Ifq: return "IFQ";
        case DropReason::Ttl: return "TTL";
        case DropReason::Col: return "COL";
        case DropReason::End: return "END";
    }
    return "?";
}

std::optional<DropReason> drop_reason_from_name(const std::string& name) {
    for (int i = 0; i < kDropReasonCount; ++i) {
        const auto r = static_cast<DropReason>(i);
        if (name == drop_reason_name(r)) return r;
    }
    return std::nullopt;
}

const char* trace_layer_name(TraceLayer l) {
    switch (l) {
        case TraceLayer::Agt: return "AGT";
        case TraceLayer::Rtr: return "RTR";
        case TraceLayer::Mac: return "MAC";
    }
    return "?";
}

const char* packet_type_name(PacketType t) {
    switch (t) {
        case PacketType::Cbr: return "cbr";
        case PacketType::Dsdv: return "dsdv";
        case PacketType::Rreq: return "rreq";
        case PacketType::Rrep: return "rrep";
        case PacketType::Rerr: return "rerr";
    }
    return "?";
}

std::optional<double> pdf_percent(std::uint64_t sent, std::uint64_t received) {
    if (sent == 0) {
        return std::nullopt;  // no-traffic marker, never 0 or 100
    }
    return 100.0 * static_cast<double>(received) / static_cast<double>(sent);
}

double throughput_kbps(std::uint64_t data_bytes_delivered, double horizon) {
    assert(horizon > 0.0);
    return static_cast<double>(data_bytes_delivered) * 8.0 / horizon / 1000.0;
}

double quantize_time(SimTime t) {
    // Round exactly the way the trace prints, so metrics computed from
    // in-memory times and from re-parsed trace times agree bit for bit.
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", t);
    return std::strtod(buf, nullptr);
}

std::uint64_t MetricsReport::total_drops() const {
    std::uint64_t total = 0;
    for (auto d : drops) total += d;
    return total;
}

MetricsCollector::MetricsCollector(std::size_t n_flows, std::ostream* trace) : trace_(trace) {
    flows_.resize(n_flows);
    for (std::size_t i = 0; i < n_flows; ++i) {
        flows_[i].flow = static_cast<std::uint32_t>(i);
    }
}

void MetricsCollector::register_flow(std::uint32_t flow, NodeId src, NodeId dst) {
    flows_.at(flow).src = src;
    flows_.at(flow).dst = dst;
}

void MetricsCollector::line(char op, SimTime t, NodeId node, TraceLayer layer, PacketType type,
                            std::uint64_t uid, std::uint32_t size, std::int64_t src,
                            std::int64_t dst, const char* reason) {
    if (trace_ == nullptr) return;
    char buf[160];
    const int n = std::snprintf(buf, sizeof(buf), "%c %.6f %u %s %s %llu %u %lld %lld %s\n", op, t,
                                node, trace_layer_name(layer), packet_type_name(type),
                                static_cast<unsigned long long>(uid), size,
                                static_cast<long long>(src), static_cast<long long>(dst), reason);
    trace_->write(buf, n);
}

void MetricsCollector::app_send(const DataPacket& p, SimTime t) {
    flows_.at(p.flow).sent += 1;
    sent_at_[p.uid] = quantize_time(t);
    line('s', t, p.src, TraceLayer::Agt, PacketType::Cbr, p.uid, p.size, p.src, p.dst, "-");
}

void MetricsCollector::app_receive(const DataPacket& p, NodeId node, SimTime t) {
    line('r', t, node, TraceLayer::Agt, PacketType::Cbr, p.uid, p.size, p.src, p.dst, "-");
    if (!delivered_.insert(p.uid).second) {
        return;  // duplicate receipt: logged above, not counted
    }
    flows_.at(p.flow).received += 1;
    received_ += 1;
    data_bytes_delivered_ += p.size;
    delay_sum_ += quantize_time(t) - sent_at_.at(p.uid);
}

void MetricsCollector::data_forward(const DataPacket& p, NodeId node, SimTime t) {
    data_bytes_forwarded_ += p.size;
    line('f', t, node, TraceLayer::Rtr, PacketType::Cbr, p.uid, p.size, p.src, p.dst, "-");
}

void MetricsCollector::data_drop(const DataPacket& p, NodeId node, TraceLayer layer, DropReason why,
                                 SimTime t) {
    flows_.at(p.flow).drops[static_cast<int>(why)] += 1;
    line('d', t, node, layer, PacketType::Cbr, p.uid, p.size, p.src, p.dst,
         drop_reason_name(why));
}

void MetricsCollector::control_send(const Frame& f, SimTime t) {
    routing_packets_ += 1;
    routing_bytes_ += f.size;
    line('s', t, f.sender, TraceLayer::Rtr, f.type, f.uid, f.size, f.trace_src, f.trace_dst, "-");
}

void MetricsCollector::control_receive(const Frame& f, NodeId node, SimTime t) {
    line('r', t, node, TraceLayer::Rtr, f.type, f.uid, f.size, f.trace_src, f.trace_dst, "-");
}

void MetricsCollector::control_drop(const Frame& f, NodeId node, TraceLayer layer, DropReason why,
                                    SimTime t) {
    line('d', t, node, layer, f.type, f.uid, f.size, f.trace_src, f.trace_dst,
         drop_reason_name(why));
}

MetricsReport MetricsCollector::finalize(double horizon) {
    MetricsReport rep;
    for (auto& fs : flows_) {
        std::uint64_t accounted = fs.received;
        for (int i = 0; i < kDropReasonCount; ++i) {
            if (i != static_cast<int>(DropReason::End)) accounted += fs.drops[i];
        }
        assert(accounted <= fs.sent);
        fs.drops[static_cast<int>(DropReason::End)] = fs.sent - accounted;

        rep.sent += fs.sent;
        rep.received += fs.received;
        for (int i = 0; i < kDropReasonCount; ++i) rep.drops[i] += fs.drops[i];
    }
    rep.pdf = pdf_percent(rep.sent, rep.received);
    if (received_ > 0) {
        rep.avg_delay_s = delay_sum_ / static_cast<double>(received_);
    }
    rep.throughput_kbps = manetsim::throughput_kbps(data_bytes_delivered_, horizon);
    rep.routing_packets = routing_packets_;
    rep.routing_bytes = routing_bytes_;
    rep.data_bytes_delivered = data_bytes_delivered_;
    rep.data_bytes_forwarded = data_bytes_forwarded_;
    rep.flows = flows_;
    if (trace_ != nullptr) {
        trace_->flush();
        if (!*trace_) {
            throw TraceIoError("trace sink failed");
        }
    }
    return rep;
}

namespace {

struct TraceLine {
    char op;
    double t;
    NodeId node;
    std::string layer;
    std::string ptype;
    std::uint64_t uid;
    std::uint32_t size;
    std::int64_t src;
    std::int64_t dst;
    std::string reason;
};

bool parse_line(const std::string& s, TraceLine& out) {
    char layer[8], ptype[8], reason[16];
    unsigned node = 0;
    unsigned long long uid = 0;
    unsigned size = 0;
    long long src = 0, dst = 0;
    const int n = std::sscanf(s.c_str(), "%c %lf %u %7s %7s %llu %u %lld %lld %15s", &out.op,
                              &out.t, &node, layer, ptype, &uid, &size, &src, &dst, reason);
    if (n != 10) return false;
    out.node = node;
    out.layer = layer;
    out.ptype = ptype;
    out.uid = uid;
    out.size = size;
    out.src = src;
    out.dst = dst;
    out.reason = reason;
    return true;
}

}  // namespace

MetricsReport parse_trace(std::istream& in, double horizon) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::size_t> flow_index;
    std::vector<MetricsReport::FlowStats> flows;
    std::unordered_map<std::uint64_t, double> sent_at;
    std::unordered_set<std::uint64_t> delivered;
    double delay_sum = 0.0;
    std::uint64_t received = 0;
    std::uint64_t data_bytes_delivered = 0;
    std::uint64_t data_bytes_forwarded = 0;
    std::uint64_t routing_packets = 0;
    std::uint64_t routing_bytes = 0;

    auto flow_for = [&](std::int64_t src, std::int64_t dst) -> MetricsReport::FlowStats& {
        auto [it, fresh] = flow_index.try_emplace({src, dst}, flows.size());
        if (fresh) {
            MetricsReport::FlowStats fs;
            fs.flow = static_cast<std::uint32_t>(flows.size());
            fs.src = static_cast<NodeId>(src);
            fs.dst = static_cast<NodeId>(dst);
            flows.push_back(fs);
        }
        return flows[it->second];
    };

    std::string s;
    TraceLine ln;
    while (std::getline(in, s)) {
        if (s.empty()) continue;
        if (!parse_line(s, ln)) {
            throw TraceIoError("malformed trace line: " + s);
        }
        if (ln.ptype == "cbr") {
            auto& fs = flow_for(ln.src, ln.dst);
            if (ln.op == 's' && ln.layer == "AGT") {
                fs.sent += 1;
                sent_at[ln.uid] = ln.t;
            } else if (ln.op == 'r' && ln.layer == "AGT") {
                if (delivered.insert(ln.uid).second) {
                    fs.received += 1;
                    received += 1;
                    data_bytes_delivered += ln.size;
                    delay_sum += ln.t - sent_at.at(ln.uid);
                }
            } else if (ln.op == 'f') {
                data_bytes_forwarded += ln.size;
            } else if (ln.op == 'd') {
                const auto why = drop_reason_from_name(ln.reason);
                if (!why) throw TraceIoError("unknown drop reason: " + ln.reason);
                fs.drops[static_cast<int>(*why)] += 1;
            }
        } else {
            if (ln.op == 's') {
                routing_packets += 1;
                routing_bytes += ln.size;
            }
        }
    }

    MetricsReport rep;
    for (auto& fs : flows) {
        std::uint64_t accounted = fs.received;
        for (int i = 0; i < kDropReasonCount; ++i) {
            if (i != static_cast<int>(DropReason::End)) accounted += fs.drops[i];
        }
        if (accounted > fs.sent) {
            throw TraceIoError("trace violates per-flow conservation");
        }
        fs.drops[static_cast<int>(DropReason::End)] = fs.sent - accounted;
        rep.sent += fs.sent;
        rep.received += fs.received;
        for (int i = 0; i < kDropReasonCount; ++i) rep.drops[i] += fs.drops[i];
    }
    rep.pdf = pdf_percent(rep.sent, rep.received);
    if (received > 0) {
        rep.avg_delay_s = delay_sum / static_cast<double>(received);
    }
    rep.throughput_kbps = throughput_kbps(data_bytes_delivered, horizon);
    rep.routing_packets = routing_packets;
    rep.routing_bytes = routing_bytes;
    rep.data_bytes_delivered = data_bytes_delivered;
    rep.data_bytes_forwarded = data_bytes_forwarded;
    rep.flows = flows;
    return rep;
}

MetricsReport parse_trace_file(const std::string& path, double horizon) {
    std::ifstream in(path);
    if (!in) {
        throw TraceIoError("cannot open trace file: " + path);
    }
    return parse_trace(in, horizon);
}

}  // namespace manetsim
