#pragma once

#include <algorithm>
#include <cmath>

#include "swarmnav/impedance_db.hpp"
#include "swarmnav/vec2.hpp"

namespace swarmnav {

struct Penetration {
    bool active = false;
    double depth = 0.0;  // m
    Vec2 normal;         // unit vector from obstacle to follower
};

// Surface distance d = |x - x_o| - radius; the interaction activates when
// d < d_def with depth d_def - d. The normal is floored away from the exact
// obstacle center.
inline Penetration penetration(const Vec2& follower, const Vec2& obstacle_pos, double radius,
                               double d_def) {
    const Vec2 r = follower - obstacle_pos;
    const double d = r.norm() - radius;
    if (d >= d_def) return {};
    Penetration p;
    p.active = true;
    p.depth = d_def - d;
    const double n = std::max(r.norm(), 1e-3);
    p.normal = r / n;
    return p;
}

struct DeltaDerivatives {
    double rate = 0.0;   // m/s
    double accel = 0.0;  // m/s^2
};

// Backward differences of the penetration depth. Callers seed prev_depth with
// the current depth and prev_rate with zero on first activation, so the
// derivatives start from rest.
inline DeltaDerivatives penetration_derivatives(double depth, double prev_depth, double prev_rate,
                                                double dt) {
    DeltaDerivatives d;
    d.rate = (depth - prev_depth) / dt;
    d.accel = (d.rate - prev_rate) / dt;
    return d;
}

// F_n = k_o * delta + d_o * delta_dot + m_o * delta_ddot along the normal.
inline double normal_force(double depth, double rate, double accel, const LinkParams& params) {
    return params.stiffness * depth + params.damping * rate + params.mass * accel;
}

// Constant-acceleration position correction: u = (F_n / m_o) * dt^2 / 2.
inline Vec2 obstacle_displacement(double force, double mass, double dt, const Vec2& normal) {
    return normal * (0.5 * force / mass * dt * dt);
}

// Interaction memory for one follower; keyed by the obstacle group so gate
// halves share a single state.
struct InteractionState {
    bool active = false;
    int group = -1;
    ObstacleClass cls = ObstacleClass::Cylinder;
    double depth = 0.0;
    double rate = 0.0;
    double accel = 0.0;
};

// Runs one tick of the follower-obstacle interaction against the nearest
// obstacle whose deflection zone the position penetrates (ties broken by
// lower group id). Gate halves share the state through their group id;
// switching to a different group restarts the derivative history. Returns the
// position correction, zero when nothing is penetrated.
inline Vec2 interact_with_nearest(InteractionState& state, const Vec2& position,
                                  const Scene& scene, const ImpedanceDb& db, double t, double dt,
                                  bool use_accel_term = true) {
    int best_group = -1;
    double best_d = std::numeric_limits<double>::infinity();
    const Obstacle* best_obs = nullptr;
    for (const auto& o : scene.obstacles) {
        const double d_def = db.lookup(o.cls).deflection;
        const double d = distance(position, o.position_at(t)) - o.radius;
        if (d >= d_def) continue;
        if (d < best_d || (d == best_d && o.group_id() < best_group)) {
            best_d = d;
            best_group = o.group_id();
            best_obs = &o;
        }
    }
    if (!best_obs) {
        state = InteractionState{};
        return {};
    }

    const ImpedanceProfile& profile = db.lookup(best_obs->cls);
    const Penetration pen =
        penetration(position, best_obs->position_at(t), best_obs->radius, profile.deflection);
    const bool fresh = !state.active || state.group != best_group;
    const double prev_depth = fresh ? pen.depth : state.depth;
    const double prev_rate = fresh ? 0.0 : state.rate;
    const DeltaDerivatives deriv = penetration_derivatives(pen.depth, prev_depth, prev_rate, dt);
    const double accel = use_accel_term ? deriv.accel : 0.0;
    const double force = normal_force(pen.depth, deriv.rate, accel, profile.drone_obstacle);

    state.active = true;
    state.group = best_group;
    state.cls = best_obs->cls;
    state.depth = pen.depth;
    state.rate = deriv.rate;
    state.accel = deriv.accel;
    return obstacle_displacement(force, profile.drone_obstacle.mass, dt, pen.normal);
}

}  // namespace swarmnav
