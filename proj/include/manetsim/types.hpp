#pragma once

#include <cmath>
#include <cstdint>

namespace manetsim {

/// Simulation time in seconds. Microsecond resolution or better; traces
/// print it with 6 decimal places.
using SimTime = double;

using NodeId = std::uint32_t;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Vec2& a, const Vec2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

/// Rectangular simulation area, origin at (0, 0).
struct Arena {
    double width = 500.0;
    double height = 500.0;

    bool contains(const Vec2& p) const {
        return p.x >= 0.0 && p.x <= width && p.y >= 0.0 && p.y <= height;
    }
};

}  // namespace manetsim
