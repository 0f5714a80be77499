#include "manetsim/mobility.hpp"

#include <cassert>

namespace manetsim {

SimTime NodeMotion::arrival_time() const {
    return depart_at + distance(origin, waypoint) / speed;
}

Vec2 NodeMotion::position_at(SimTime t) const {
    if (t <= depart_at) {
        return origin;
    }
    const double total = distance(origin, waypoint);
    const double travelled = (t - depart_at) * speed;
    if (travelled >= total || total == 0.0) {
        return waypoint;
    }
    const double f = travelled / total;
    return Vec2{origin.x + f * (waypoint.x - origin.x), origin.y + f * (waypoint.y - origin.y)};
}

bool NodeMotion::moving_at(SimTime t) const {
    return t > depart_at && t < arrival_time();
}

std::vector<Vec2> initial_placement(std::size_t n, const Arena& arena, RngStream& rng) {
    std::vector<Vec2> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.uniform(0.0, arena.width);
        const double y = rng.uniform(0.0, arena.height);
        out.push_back(Vec2{x, y});
    }
    return out;
}

NodeMotion next_leg(const NodeMotion& arrived, double pause, const Arena& arena, RngStream& rng) {
    NodeMotion leg;
    leg.node = arrived.node;
    leg.origin = arrived.waypoint;
    leg.waypoint.x = rng.uniform(0.0, arena.width);
    leg.waypoint.y = rng.uniform(0.0, arena.height);
    leg.depart_at = arrived.arrival_time() + pause;
    leg.speed = arrived.speed;
    return leg;
}

MobilityModel::MobilityModel(const Arena& arena, double speed, double pause, EventQueue& engine,
                             RngStream& rng)
    : arena_(arena), speed_(speed), pause_(pause), engine_(engine), rng_(rng) {}

void MobilityModel::start(std::size_t n, const std::vector<Vec2>* fixed_positions) {
    std::vector<Vec2> placement;
    if (fixed_positions != nullptr) {
        assert(fixed_positions->size() == n);
        placement = *fixed_positions;
    } else {
        placement = initial_placement(n, arena_, rng_);
    }
    legs_.clear();
    legs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        NodeMotion leg;
        leg.node = static_cast<NodeId>(i);
        leg.origin = placement[i];
        leg.waypoint.x = rng_.uniform(0.0, arena_.width);
        leg.waypoint.y = rng_.uniform(0.0, arena_.height);
        leg.depart_at = pause_;
        leg.speed = speed_;
        legs_.push_back(leg);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const NodeId node = static_cast<NodeId>(i);
        engine_.schedule(legs_[i].arrival_time(), [this, node] { on_arrival(node); });
    }
}

void MobilityModel::on_arrival(NodeId node) {
    legs_[node] = next_leg(legs_[node], pause_, arena_, rng_);
    engine_.schedule(legs_[node].arrival_time(), [this, node] { on_arrival(node); });
}

Vec2 MobilityModel::position(NodeId node, SimTime t) const {
    return legs_[node].position_at(t);
}

}  // namespace manetsim
