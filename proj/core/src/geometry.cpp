#include "aastar/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace aastar {

Position3 advance_relay(const Position3 &relay, const Eigen::Vector2d &velocity, double dt) {
    if (dt <= 0.0)
        throw std::invalid_argument("advance_relay: dt must be positive");
    return {relay.x + velocity.x() * dt, relay.y + velocity.y() * dt, relay.z};
}

bool check_velocity(const Eigen::Vector2d &velocity, double v_max) {
    if (v_max <= 0.0)
        throw std::invalid_argument("check_velocity: v_max must be positive");
    return velocity.norm() <= v_max;
}

bool in_bounds(const Position3 &p, const AreaBounds &b) {
    return p.x >= b.x_min && p.x <= b.x_max && p.y >= b.y_min && p.y <= b.y_max;
}

double distance(const Position3 &a, const Position3 &b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

} // namespace aastar
