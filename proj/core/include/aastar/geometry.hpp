#pragma once

#include <Eigen/Dense>
#include <vector>

namespace aastar {

struct Position3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

// Rectangular service area; the relay flies at the fixed altitude.
struct AreaBounds {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;
    double altitude = 0.0;

    double x_extent() const { return x_max - x_min; }
    double y_extent() const { return y_max - y_min; }
};

struct NodeLayout {
    Position3 satellite;
    std::vector<Position3> users; // ground users, z = 0
    Position3 warden;
    Position3 relay;
};

// Pure horizontal motion; z is untouched.
Position3 advance_relay(const Position3 &relay, const Eigen::Vector2d &velocity, double dt);

// true iff |velocity| <= v_max (boundary inclusive)
bool check_velocity(const Eigen::Vector2d &velocity, double v_max);

// Horizontal containment only; altitude is fixed by construction.
bool in_bounds(const Position3 &p, const AreaBounds &b);

double distance(const Position3 &a, const Position3 &b);

} // namespace aastar
