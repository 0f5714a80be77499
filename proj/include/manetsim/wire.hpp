#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <variant>
#include <vector>

#include "manetsim/types.hpp"

namespace manetsim {

enum class PacketType { Cbr, Dsdv, Rreq, Rrep, Rerr };

const char* packet_type_name(PacketType t);

/// Fixed control-packet sizes used for byte accounting. Every control
/// packet carries a 20-byte header on top of its body.
constexpr std::uint32_t kPacketHeaderBytes = 20;
constexpr std::uint32_t kRreqFrameBytes = 24 + kPacketHeaderBytes;
constexpr std::uint32_t kRrepFrameBytes = 20 + kPacketHeaderBytes;
constexpr std::uint32_t kDsdvEntryBytes = 12;

constexpr std::uint32_t rerr_frame_bytes(std::size_t entries) {
    return 8 + 8 * static_cast<std::uint32_t>(entries) + kPacketHeaderBytes;
}
constexpr std::uint32_t dsdv_advert_bytes(std::size_t entries) {
    return kPacketHeaderBytes + kDsdvEntryBytes * static_cast<std::uint32_t>(entries);
}

/// Unreachable-distance marker for DSDV metrics.
constexpr std::uint32_t kInfiniteMetric = std::numeric_limits<std::uint32_t>::max();

inline std::uint32_t bump_metric(std::uint32_t m) {
    return m == kInfiniteMetric ? kInfiniteMetric : m + 1;
}

/// Application datagram. `uid` is unique across the whole run and is the
/// id printed in traces; `seq_in_flow` is the per-flow packet id.
struct DataPacket {
    std::uint32_t flow = 0;
    std::uint64_t uid = 0;
    std::uint64_t seq_in_flow = 0;
    NodeId src = 0;
    NodeId dst = 0;
    std::uint32_t size = 0;
    std::int32_t ttl = 0;
    SimTime created_at = 0.0;
};

struct DsdvAdvertEntry {
    NodeId destination;
    std::uint32_t metric;
    std::uint32_t sequence;
};

/// Full or incremental routing-table advertisement. Metrics are the
/// advertiser's own; the receiver adds one hop.
struct DsdvAdvert {
    NodeId origin = 0;
    std::vector<DsdvAdvertEntry> entries;
};

struct Rreq {
    NodeId origin = 0;
    std::uint32_t origin_sequence = 0;
    std::uint32_t rreq_id = 0;
    NodeId destination = 0;
    std::uint32_t dest_sequence_known = 0;  // 0 when unknown
    std::uint32_t hop_count = 0;
};

struct Rrep {
    NodeId destination = 0;
    std::uint32_t dest_sequence = 0;
    std::uint32_t hop_count = 0;
    NodeId origin = 0;
    double lifetime = 0.0;
};

struct Rerr {
    std::vector<std::pair<NodeId, std::uint32_t>> unreachable;  // (dest, seq)
};

using Payload = std::variant<DataPacket, DsdvAdvert, Rreq, Rrep, Rerr>;

/// What the channel moves between nodes. `size` is the serialized size
/// used for the bandwidth model and for byte accounting: the application
/// size for data packets, the fixed control sizes above otherwise.
struct Frame {
    std::uint64_t uid = 0;
    NodeId sender = 0;
    bool broadcast = false;
    NodeId next_hop = 0;  // meaningful for unicast only
    std::uint32_t size = 0;
    PacketType type = PacketType::Cbr;
    Payload payload;
    // Logical endpoints, for tracing. trace_dst is -1 for broadcasts.
    NodeId trace_src = 0;
    std::int64_t trace_dst = -1;
};

}  // namespace manetsim
