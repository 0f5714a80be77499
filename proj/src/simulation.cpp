#include "manetsim/simulation.hpp"

#include <fstream>

namespace manetsim {

namespace {

RadioConfig radio_config(const ScenarioConfig& cfg) {
    RadioConfig r;
    r.range = cfg.range;
    r.bandwidth = cfg.bandwidth;
    r.broadcast_jitter_max = cfg.broadcast_jitter_max;
    r.collisions_enabled = cfg.collisions_enabled;
    r.propagation_delay = cfg.propagation_delay;
    r.ifq_capacity = cfg.ifq_capacity;
    return r;
}

}  // namespace

Simulation::Simulation(const ScenarioConfig& cfg, SimOptions options)
    : cfg_(cfg),
      rng_(cfg.seed),
      metrics_(cfg.flows, options.trace),
      mobility_(Arena{cfg.area_width, cfg.area_height}, cfg.speed, cfg.pause_time, engine_,
                rng_.mobility),
      channel_(
          radio_config(cfg), cfg.nodes, engine_, rng_.channel_jitter, metrics_,
          [this](NodeId n, SimTime t) { return mobility_.position(n, t); },
          [this](NodeId to, const Frame& f) { deliver(to, f); },
          [this](NodeId sender, NodeId dead, const Frame& f) { link_failed(sender, dead, f); }) {
    validate(cfg_);

    mobility_.start(cfg_.nodes, options.positions ? &*options.positions : nullptr);

    services_ = std::make_unique<RunServices>(RunServices{engine_, channel_, metrics_,
                                                          rng_.protocol, cfg_, uid_counter_});
    agents_.reserve(cfg_.nodes);
    for (NodeId n = 0; n < cfg_.nodes; ++n) {
        if (cfg_.protocol == Protocol::Dsdv) {
            agents_.push_back(std::make_unique<DsdvAgent>(*services_, n));
        } else {
            agents_.push_back(std::make_unique<AodvAgent>(*services_, n));
        }
    }
    for (auto& agent : agents_) {
        agent->start();
    }

    auto flows = make_random_flows(cfg_.flows, cfg_.nodes, cfg_.rate, cfg_.packet_size,
                                   cfg_.traffic_start, cfg_.horizon, rng_.traffic);
    traffic_ = std::make_unique<TrafficManager>(
        std::move(flows), cfg_.ttl, engine_, metrics_,
        [this](DataPacket p) { agents_[p.src]->accept_from_app(std::move(p)); }, uid_counter_);
    traffic_->start();
}

void Simulation::deliver(NodeId to, const Frame& f) {
    if (f.type == PacketType::Cbr) {
        const auto& p = std::get<DataPacket>(f.payload);
        if (p.dst == to) {
            metrics_.app_receive(p, to, engine_.now());
        } else {
            agents_[to]->accept_from_network(p);
        }
        return;
    }
    metrics_.control_receive(f, to, engine_.now());
    agents_[to]->handle_control(f);
}

void Simulation::link_failed(NodeId sender, NodeId dead, const Frame& f) {
    agents_[sender]->handle_link_failure(dead, f);
}

std::size_t Simulation::run_until(SimTime t) {
    return engine_.run_until(t);
}

MetricsReport Simulation::finalize() {
    return metrics_.finalize(cfg_.horizon);
}

MetricsReport Simulation::run() {
    engine_.run_until(cfg_.horizon);
    return finalize();
}

const DsdvAgent* Simulation::dsdv(NodeId node) const {
    return dynamic_cast<const DsdvAgent*>(agents_[node].get());
}

const AodvAgent* Simulation::aodv(NodeId node) const {
    return dynamic_cast<const AodvAgent*>(agents_[node].get());
}

MetricsReport run_scenario(const ScenarioConfig& cfg, const std::optional<std::string>& trace_path) {
    if (!trace_path) {
        Simulation sim(cfg);
        return sim.run();
    }
    std::ofstream trace(*trace_path, std::ios::binary);
    if (!trace) {
        throw TraceIoError("cannot open trace file for writing: " + *trace_path);
    }
    SimOptions opts;
    opts.trace = &trace;
    Simulation sim(cfg, std::move(opts));
    return sim.run();
}

}  // namespace manetsim
