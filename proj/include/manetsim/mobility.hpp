#pragma once

#include <cstddef>
#include <vector>

#include "manetsim/engine.hpp"
#include "manetsim/rng.hpp"
#include "manetsim/types.hpp"

namespace manetsim {

/// One random-waypoint leg: hold at `origin` until `depart_at`, then move
/// to `waypoint` in a straight line at `speed`, then hold at the waypoint
/// until the next leg replaces this one.
struct NodeMotion {
    NodeId node = 0;
    Vec2 origin;
    Vec2 waypoint;
    SimTime depart_at = 0.0;
    double speed = 0.0;

    SimTime arrival_time() const;
    Vec2 position_at(SimTime t) const;
    bool moving_at(SimTime t) const;
};

/// n independent uniform positions inside the arena. Draw order: node 0
/// x then y, node 1 x then y, ...
std::vector<Vec2> initial_placement(std::size_t n, const Arena& arena, RngStream& rng);

/// Leg following an arrival: pause exactly `pause` seconds at the reached
/// waypoint, then head for a fresh uniform waypoint at the same speed.
NodeMotion next_leg(const NodeMotion& arrived, double pause, const Arena& arena, RngStream& rng);

/// Random-waypoint motion for every node. Positions are closed-form
/// interpolations of the current leg, computed on demand; the only events
/// are per-node waypoint arrivals.
///
/// Nodes begin the run paused at their initial position and first depart
/// at t = pause, so pause >= horizon yields an exactly static network.
class MobilityModel {
  public:
    MobilityModel(const Arena& arena, double speed, double pause, EventQueue& engine, RngStream& rng);

    /// Install initial legs and schedule arrivals. Draws first the n
    /// placement positions, then one first waypoint per node, unless
    /// explicit positions are supplied (tests, fixed topologies).
    void start(std::size_t n, const std::vector<Vec2>* fixed_positions = nullptr);

    Vec2 position(NodeId node, SimTime t) const;
    const NodeMotion& leg(NodeId node) const { return legs_[node]; }
    std::size_t size() const { return legs_.size(); }

  private:
    void on_arrival(NodeId node);

    Arena arena_;
    double speed_;
    double pause_;
    EventQueue& engine_;
    RngStream& rng_;
    std::vector<NodeMotion> legs_;
};

}  // namespace manetsim
