#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "manetsim/aodv.hpp"
#include "manetsim/channel.hpp"
#include "manetsim/config.hpp"
#include "manetsim/dsdv.hpp"
#include "manetsim/engine.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/mobility.hpp"
#include "manetsim/rng.hpp"
#include "manetsim/routing.hpp"
#include "manetsim/traffic.hpp"

namespace manetsim {

/// Programmatic knobs that are not part of the config-file surface.
struct SimOptions {
    /// Fixed initial positions (size must equal cfg.nodes); bypasses the
    /// placement draws. Used by tests that need exact topologies.
    std::optional<std::vector<Vec2>> positions;
    /// Trace sink; null writes no trace.
    std::ostream* trace = nullptr;
};

/// One fully wired simulation run. Construction draws placements, flows
/// and initial timers; run() executes to the horizon and finalizes the
/// metrics. Strictly single-threaded; owns all of its state, so any
/// number of Simulations may run concurrently in separate threads.
class Simulation {
  public:
    explicit Simulation(const ScenarioConfig& cfg, SimOptions options = {});

    /// Run to cfg.horizon and return the finalized report.
    MetricsReport run();

    /// Partial stepping for tests; finalize() afterwards if needed.
    std::size_t run_until(SimTime t);
    MetricsReport finalize();

    const ScenarioConfig& config() const { return cfg_; }
    EventQueue& engine() { return engine_; }
    Vec2 position(NodeId node, SimTime t) const { return mobility_.position(node, t); }
    const Channel& channel() const { return channel_; }
    const std::vector<Flow>& flows() const { return traffic_->flows(); }

    /// Protocol-table access for tests and bindings. Null when the run
    /// uses the other protocol.
    const DsdvAgent* dsdv(NodeId node) const;
    const AodvAgent* aodv(NodeId node) const;

  private:
    void deliver(NodeId to, const Frame& f);
    void link_failed(NodeId sender, NodeId dead, const Frame& f);

    ScenarioConfig cfg_;
    EventQueue engine_;
    RandomService rng_;
    MetricsCollector metrics_;
    MobilityModel mobility_;
    Channel channel_;
    std::uint64_t uid_counter_ = 0;
    std::unique_ptr<RunServices> services_;
    std::vector<std::unique_ptr<RoutingAgent>> agents_;
    std::unique_ptr<TrafficManager> traffic_;
};

/// Execute one scenario, writing the trace to `trace_path` when given.
/// Identical config (including seed) produces identical output bytes.
MetricsReport run_scenario(const ScenarioConfig& cfg,
                           const std::optional<std::string>& trace_path = std::nullopt);

}  // namespace manetsim
