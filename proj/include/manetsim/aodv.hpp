#pragma once

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <utility>

#include "manetsim/routing.hpp"

namespace manetsim {

struct AodvEntry {
    NodeId destination = 0;
    NodeId next_hop = 0;
    std::uint32_t hop_count = 0;
    std::uint32_t dest_sequence = 0;
    SimTime expires_at = 0.0;
    bool valid = false;
};

/// Ad hoc On-Demand Distance Vector routing.
///
/// Routes are discovered by flooding RREQs only when data needs them;
/// RREPs travel back along the reverse path; breaks invalidate routes and
/// propagate RERRs. Data awaiting discovery waits in a bounded FIFO per
/// destination. With no data flows the protocol stays completely silent.
class AodvAgent : public RoutingAgent {
  public:
    AodvAgent(RunServices& services, NodeId self);

    void start() override;
    void accept_from_app(DataPacket p) override;
    void accept_from_network(DataPacket p) override;
    void handle_control(const Frame& f) override;
    void handle_link_failure(NodeId dead, const Frame& f) override;

    // Protocol operations, callable directly in tests.
    void originate_rreq(NodeId destination);
    void handle_rreq(Rreq r, NodeId from);
    void handle_rrep(const Rrep& r, NodeId from);
    void handle_rerr(const Rerr& r, NodeId from);
    void handle_link_break(NodeId dead);

    std::optional<NodeId> next_hop(NodeId destination) const;
    const std::map<NodeId, AodvEntry>& table() const { return table_; }
    std::uint32_t own_sequence() const { return own_sequence_; }
    std::uint32_t last_rreq_id() const { return rreq_id_; }

  private:
    struct Discovery {
        std::deque<DataPacket> buffer;
        std::uint32_t attempts = 0;
        double wait = 0.0;
        EventHandle retry;
    };

    const AodvEntry* valid_route(NodeId destination) const;
    void install_route(NodeId destination, NodeId via, std::uint32_t hops, std::uint32_t seq,
                       double lifetime);
    void refresh_route(AodvEntry& e, double lifetime);
    void forward_data(DataPacket p, bool allow_rerr);
    void buffer_and_discover(DataPacket p);
    void send_rreq(NodeId destination);
    void retry_timer_fired(NodeId destination);
    void flush_buffer(NodeId destination);
    void drop_buffer(NodeId destination);
    void send_rrep(const Rrep& r, NodeId to);
    void send_rerr(Rerr r);

    RunServices& sv_;
    NodeId self_;
    std::map<NodeId, AodvEntry> table_;
    std::map<NodeId, Discovery> discovery_;
    std::set<std::pair<NodeId, std::uint32_t>> seen_rreq_;
    std::uint32_t own_sequence_ = 0;
    std::uint32_t rreq_id_ = 0;
};

}  // namespace manetsim
