#pragma once

#include <cmath>
#include <vector>

#include "swarmnav/error.hpp"
#include "swarmnav/impedance_db.hpp"
#include "swarmnav/vec2.hpp"

namespace swarmnav {

// Virtual mass-spring-damper link between the leader and one follower. The
// displacement state rides on top of the geometric formation offset.
struct ImpedanceLink {
    Vec2 displacement;  // z
    Vec2 velocity;      // z-dot
    LinkParams params;
    bool near_human = false;
};

struct FormationSpec {
    int n_followers = 0;
    double radius = 0.5;  // m, separation from the leader
    std::vector<double> theta;
    double beta = 1.0;    // scaling of the impedance displacement
    double d_enter = 1.0; // m, hysteresis engage threshold
    double d_exit = 1.3;  // m, hysteresis release threshold

    // Evenly spaced angular offsets starting at pi/2.
    static FormationSpec even(int n, double radius, double beta = 1.0) {
        FormationSpec spec;
        spec.n_followers = n;
        spec.radius = radius;
        spec.beta = beta;
        for (int j = 0; j < n; ++j)
            spec.theta.push_back(M_PI / 2.0 + 2.0 * M_PI * j / std::max(1, n));
        return spec;
    }

    Vec2 offset(int j) const {
        return {radius * std::cos(theta[j]), radius * std::sin(theta[j])};
    }
};

inline Vec2 leader_velocity(const Vec2& x_now, const Vec2& x_prev, double dt) {
    return (x_now - x_prev) / dt;
}

// Virtual external force induced by the leader: viscous coupling to the
// leader velocity, so a moving leader drags the link and a stationary one
// lets it relax to zero.
inline Vec2 external_force(const Vec2& leader_vel, const LinkParams& params) {
    return leader_vel * params.damping;
}

// Semi-implicit Euler step of m*z'' + d*z' + k*z = F_ext.
inline ImpedanceLink step_link(const ImpedanceLink& link, const Vec2& f_ext, double dt) {
    ImpedanceLink next = link;
    const Vec2 accel = (f_ext - link.velocity * link.params.damping -
                        link.displacement * link.params.stiffness) /
                       link.params.mass;
    next.velocity = link.velocity + accel * dt;
    next.displacement = link.displacement + next.velocity * dt;
    if (!is_finite(next.velocity) || !is_finite(next.displacement))
        throw NonFiniteState("impedance link state diverged");
    return next;
}

inline Vec2 follower_target(const Vec2& leader_pos, const Vec2& displacement,
                            const FormationSpec& spec, int j) {
    return leader_pos + displacement * spec.beta + spec.offset(j);
}

// Two-threshold switch: engages at d <= d_enter, releases at d >= d_exit,
// holds in between.
inline bool hysteresis_update(bool flag, double d, double d_enter, double d_exit) {
    if (d_enter >= d_exit) throw InvalidThresholds("d_enter must be < d_exit");
    if (d <= d_enter) return true;
    if (d >= d_exit) return false;
    return flag;
}

inline double link_energy(const ImpedanceLink& link) {
    return 0.5 * link.params.mass * link.velocity.norm_sq() +
           0.5 * link.params.stiffness * link.displacement.norm_sq();
}

}  // namespace swarmnav
