#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "manetsim/types.hpp"
#include "manetsim/wire.hpp"

namespace manetsim {

enum class DropReason : int { Nrte = 0, Ifq = 1, Ttl = 2, Col = 3, End = 4 };
constexpr int kDropReasonCount = 5;

const char* drop_reason_name(DropReason r);
std::optional<DropReason> drop_reason_from_name(const std::string& name);

enum class TraceLayer { Agt, Rtr, Mac };
const char* trace_layer_name(TraceLayer l);

class TraceIoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Packet delivery fraction in percent: 100 * received / sent.
/// No traffic (sent == 0) has no defined value.
std::optional<double> pdf_percent(std::uint64_t sent, std::uint64_t received);

/// Aggregate delivered application bits over the horizon, in kb/s.
double throughput_kbps(std::uint64_t data_bytes_delivered, double horizon);

/// Per-run aggregates for the four headline metrics plus drop accounting.
struct MetricsReport {
    std::uint64_t sent = 0;
    std::uint64_t received = 0;
    std::optional<double> pdf;          // percent; empty marker when sent == 0
    std::optional<double> avg_delay_s;  // empty marker when nothing was delivered
    double throughput_kbps = 0.0;
    std::uint64_t routing_packets = 0;  // hop-wise control transmissions
    std::uint64_t routing_bytes = 0;
    std::uint64_t data_bytes_delivered = 0;
    std::uint64_t data_bytes_forwarded = 0;  // hop-wise data bytes handed to the radio
    std::array<std::uint64_t, kDropReasonCount> drops{};

    struct FlowStats {
        std::uint32_t flow = 0;
        NodeId src = 0;
        NodeId dst = 0;
        std::uint64_t sent = 0;
        std::uint64_t received = 0;
        std::array<std::uint64_t, kDropReasonCount> drops{};
    };
    std::vector<FlowStats> flows;

    std::uint64_t total_drops() const;
};

/// Records every send/receive/forward/drop, counts routing transmissions,
/// and writes the line-oriented trace (when a sink is attached):
///
///   <op> <time> <node> <layer> <ptype> <pkt_id> <size> <src> <dst> <reason>
///
/// op in {s,r,f,d}; time with 6 decimals; reason `-` except on drops.
/// Delay arithmetic uses times quantized to the 6 printed decimals, so an
/// independent re-parse of the trace reproduces the report exactly.
class MetricsCollector {
  public:
    explicit MetricsCollector(std::size_t n_flows, std::ostream* trace = nullptr);

    void register_flow(std::uint32_t flow, NodeId src, NodeId dst);

    void app_send(const DataPacket& p, SimTime t);
    void app_receive(const DataPacket& p, NodeId node, SimTime t);
    void data_forward(const DataPacket& p, NodeId node, SimTime t);
    void data_drop(const DataPacket& p, NodeId node, TraceLayer layer, DropReason why, SimTime t);

    void control_send(const Frame& f, SimTime t);
    void control_receive(const Frame& f, NodeId node, SimTime t);
    void control_drop(const Frame& f, NodeId node, TraceLayer layer, DropReason why, SimTime t);

    /// Compute the report; packets neither delivered nor dropped are
    /// charged to the END (in flight at horizon) bucket. Flushes the
    /// trace sink and throws TraceIoError if it failed.
    MetricsReport finalize(double horizon);

  private:
    void line(char op, SimTime t, NodeId node, TraceLayer layer, PacketType type,
              std::uint64_t uid, std::uint32_t size, std::int64_t src, std::int64_t dst,
              const char* reason);

    std::ostream* trace_;
    std::vector<MetricsReport::FlowStats> flows_;
    std::unordered_map<std::uint64_t, double> sent_at_;  // uid -> quantized send time
    std::unordered_set<std::uint64_t> delivered_;
    double delay_sum_ = 0.0;
    std::uint64_t received_ = 0;
    std::uint64_t data_bytes_delivered_ = 0;
    std::uint64_t data_bytes_forwarded_ = 0;
    std::uint64_t routing_packets_ = 0;
    std::uint64_t routing_bytes_ = 0;
};

/// Round to the 6 decimal places the trace prints.
double quantize_time(SimTime t);

/// Recompute a MetricsReport from a trace stream. Given the run's
/// horizon this reproduces MetricsCollector::finalize bit for bit: the
/// trace is a sufficient statistic for the report.
MetricsReport parse_trace(std::istream& in, double horizon);
MetricsReport parse_trace_file(const std::string& path, double horizon);

}  // namespace manetsim
