#pragma once

#include <algorithm>
#include <vector>

#include "swarmnav/scene.hpp"
#include "swarmnav/vec2.hpp"

namespace swarmnav {

struct ApfGains {
    double k_att = 1.5;
    double k_rep = 0.3;
    double d_safe = 0.8;    // m
    double speed_cap = 1.2; // m/s, leader velocity-command clamp
};

struct LeaderState {
    Vec2 position;
    Vec2 prev_position;
    Vec2 velocity;
    int waypoint_index = 0;
};

// Attraction toward the active waypoint, magnitude k_att * distance.
inline Vec2 attraction(const Vec2& pos, const Vec2& waypoint, double k_att) {
    return (waypoint - pos) * k_att;
}

inline constexpr double kMinObstacleDistance = 1e-3;  // m, the 1/d^2 law diverges at contact

// Repulsion summed over obstacles inside the safety radius, measured to the
// obstacle surface. Each active obstacle contributes
// k_rep * (1/d - 1/d_safe) / d^2 away from the obstacle; the contribution is
// zero at d = d_safe, so the field is continuous at the boundary.
inline Vec2 repulsion(const Vec2& pos, const Scene& scene, double t, double k_rep, double d_safe) {
    Vec2 total;
    for (const auto& o : scene.obstacles) {
        const Vec2 op = o.position_at(t);
        const Vec2 away = pos - op;
        double d = away.norm() - o.radius;
        if (d > d_safe) continue;
        d = std::max(d, kMinObstacleDistance);
        const double mag = k_rep * (1.0 / d - 1.0 / d_safe) / (d * d);
        total += unit(away) * mag;
    }
    return total;
}

inline Vec2 total_force(const Vec2& pos, const Vec2& waypoint, const Scene& scene, double t,
                        const ApfGains& gains) {
    return attraction(pos, waypoint, gains.k_att) +
           repulsion(pos, scene, t, gains.k_rep, gains.d_safe);
}

// Advances past every waypoint within tolerance; the final waypoint is never
// skipped.
inline int advance_waypoint(const Vec2& pos, const std::vector<Vec2>& path, int index,
                            double tolerance) {
    const int last = static_cast<int>(path.size()) - 1;
    while (index < last && distance(pos, path[index]) < tolerance) ++index;
    return index;
}

// Kinematic velocity-command model: the force is taken as a commanded
// velocity, clamped to the speed cap, and integrated one step.
inline LeaderState step_leader(const LeaderState& state, const Vec2& force, double dt,
                               double speed_cap) {
    LeaderState next = state;
    next.velocity = clamp_norm(force, speed_cap);
    next.prev_position = state.position;
    next.position = state.position + next.velocity * dt;
    return next;
}

}  // namespace swarmnav
