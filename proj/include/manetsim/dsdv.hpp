#pragma once

#include <map>
#include <optional>
#include <set>

#include "manetsim/routing.hpp"

namespace manetsim {

/// One routing-table row. Even sequence numbers originate at the
/// destination; odd ones mark a broken route. The self entry is always
/// (metric 0, even sequence, next_hop = self).
struct DsdvEntry {
    NodeId destination = 0;
    NodeId next_hop = 0;
    std::uint32_t metric = kInfiniteMetric;
    std::uint32_t sequence = 0;
    SimTime installed_at = 0.0;
};

/// Destination-Sequenced Distance Vector routing.
///
/// Every node keeps a full table, advertises it periodically (full dump,
/// own sequence number +2 each cycle) and advertises changed entries
/// immediately after a short randomized delay, rate-limited per node.
/// Preference on received candidates: fresher sequence number first,
/// then smaller metric; ties keep the incumbent. Link breaks mark every
/// route through the dead neighbor infinite with an odd sequence.
class DsdvAgent : public RoutingAgent {
  public:
    DsdvAgent(RunServices& services, NodeId self);

    void start() override;
    void accept_from_app(DataPacket p) override;
    void accept_from_network(DataPacket p) override;
    void handle_control(const Frame& f) override;
    void handle_link_failure(NodeId dead, const Frame& f) override;

    // Protocol operations, callable directly in tests.
    void periodic_update();
    void handle_advert(const DsdvAdvert& adv, NodeId from);
    void handle_link_break(NodeId dead);
    std::optional<NodeId> next_hop(NodeId destination) const;

    const std::map<NodeId, DsdvEntry>& table() const { return table_; }
    std::uint32_t own_sequence() const { return own_sequence_; }
    std::uint64_t adverts_sent() const { return adverts_sent_; }

  private:
    void forward_data(DataPacket p, bool from_app);
    void flag_change(NodeId destination);
    void triggered_update();
    void send_advert(bool full_dump);
    void bump_own_sequence(std::uint32_t to_beat);

    RunServices& sv_;
    NodeId self_;
    std::map<NodeId, DsdvEntry> table_;
    std::set<NodeId> changed_;  // destinations flagged since the last advert
    std::uint32_t own_sequence_ = 0;
    std::uint64_t cycle_ = 0;
    SimTime last_trigger_ = 0.0;
    bool trigger_pending_ = false;
    bool ever_triggered_ = false;
    std::uint64_t adverts_sent_ = 0;
};

}  // namespace manetsim
