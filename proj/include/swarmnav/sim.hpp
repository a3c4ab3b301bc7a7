#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <fstream>
#include <string>
#include <vector>

#include "swarmnav/apf.hpp"
#include "swarmnav/error.hpp"
#include "swarmnav/formation.hpp"
#include "swarmnav/impedance_db.hpp"
#include "swarmnav/obstacle_impedance.hpp"
#include "swarmnav/scene.hpp"
#include "swarmnav/waypoints.hpp"

namespace swarmnav {

struct SimConfig {
    double dt = 0.02;        // s
    double duration = 60.0;  // s
    double speed_cap = 2.0;  // m/s, per-tick follower displacement cap
    bool use_accel_term = true;          // keep the m_o * delta_ddot contribution
    bool disable_repulsion = false;      // ablation switch
    bool disable_obstacle_impedance = false;  // ablation switch
};

struct FollowerState {
    Vec2 position;
    double speed = 0.0;
    ImpedanceLink link;
    InteractionState interaction;
};

struct SwarmState {
    LeaderState leader;
    std::vector<FollowerState> followers;
    double t = 0.0;
};

enum class Termination { Reached, Timeout, Stall };

inline const char* to_string(Termination r) {
    switch (r) {
        case Termination::Reached: return "reached";
        case Termination::Timeout: return "timeout";
        case Termination::Stall: return "stall";
    }
    return "?";
}

struct TraceRow {
    double t = 0.0;
    int drone = 0;  // 0 = leader, 1.. = followers
    Vec2 pos;
    double speed = 0.0;
    int wp_index = 0;
    bool near_human = false;
    int cls = -1;  // active impedance class code, -1 when inactive
    double delta = 0.0;
};

struct SimTrace {
    double dt = 0.0;
    Termination reason = Termination::Timeout;
    int ticks = 0;
    std::vector<TraceRow> rows;
};

// Goal tolerance comes from the profile of the obstacle class nearest the
// goal at t=0; an empty scene falls back to the cylinder row.
inline double dominant_path_tolerance(const Scene& scene, const ImpedanceDb& db) {
    ObstacleClass cls = ObstacleClass::Cylinder;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : scene.obstacles) {
        const double d = distance(scene.goal, o.position_at(0.0)) - o.radius;
        if (d < best) {
            best = d;
            cls = o.cls;
        }
    }
    return db.lookup(cls).path_tolerance;
}

class Simulation {
public:
    Simulation(const Scene& scene, const ImpedanceDb& db, const WaypointPath& path,
               const FormationSpec& formation, const ApfGains& apf, const SimConfig& cfg)
        : scene_(scene), db_(db), path_(path), formation_(formation), apf_(apf), cfg_(cfg),
          goal_tolerance_(dominant_path_tolerance(scene, db)) {}

    double goal_tolerance() const { return goal_tolerance_; }

    SwarmState initial_state() const {
        SwarmState s;
        s.leader.position = scene_.start;
        s.leader.prev_position = scene_.start;
        s.followers.resize(formation_.n_followers);
        for (int j = 0; j < formation_.n_followers; ++j) {
            s.followers[j].position = scene_.start + formation_.offset(j);
            s.followers[j].link.params = db_.drone_drone_params(scene_, s.followers[j].position,
                                                                false, 0.0);
        }
        return s;
    }

    // One control tick. Phase order: dynamic obstacles advance with time,
    // waypoint bookkeeping, leader force and step, then per follower the
    // hysteresis/parameter switch, link dynamics, formation target, obstacle
    // impedance correction, and the capped position update.
    SwarmState tick(const SwarmState& state, SimTrace* trace = nullptr) const {
        const double dt = cfg_.dt;
        const double t_now = state.t + dt;
        SwarmState next = state;
        next.t = t_now;

        next.leader.waypoint_index = advance_waypoint(state.leader.position, path_.points,
                                                      state.leader.waypoint_index, goal_tolerance_);
        const Vec2 waypoint = path_.points[next.leader.waypoint_index];
        Vec2 force = attraction(state.leader.position, waypoint, apf_.k_att);
        if (!cfg_.disable_repulsion)
            force += repulsion(state.leader.position, scene_, t_now, apf_.k_rep, apf_.d_safe);
        const LeaderState stepped = step_leader(state.leader, force, dt, apf_.speed_cap);
        next.leader.position = stepped.position;
        next.leader.prev_position = stepped.prev_position;
        next.leader.velocity = stepped.velocity;
        check_bounds(next.leader.position, "leader");

        const Vec2 v_leader = leader_velocity(next.leader.position, next.leader.prev_position, dt);

        for (int j = 0; j < formation_.n_followers; ++j) {
            FollowerState& f = next.followers[j];
            const double d_human =
                min_distance_to_class(f.position, scene_, ObstacleClass::Human, t_now);
            const bool near = hysteresis_update(f.link.near_human, d_human, formation_.d_enter,
                                                formation_.d_exit);
            f.link.near_human = near;
            f.link.params = db_.drone_drone_params(scene_, f.position, near, t_now);
            f.link = step_link(f.link, external_force(v_leader, f.link.params), dt);
            Vec2 target = follower_target(next.leader.position, f.link.displacement, formation_, j);
            apply_obstacle_impedance(f, target, t_now, dt);

            Vec2 move = target - f.position;
            move = clamp_norm(move, cfg_.speed_cap * dt);
            f.position += move;
            f.speed = move.norm() / dt;
            check_bounds(f.position, "follower");

            if (trace) {
                trace->rows.push_back({t_now, j + 1, f.position, f.speed,
                                       next.leader.waypoint_index, near,
                                       f.interaction.active ? static_cast<int>(f.interaction.cls) : -1,
                                       f.interaction.active ? f.interaction.depth : 0.0});
            }
        }

        if (trace) {
            trace->rows.push_back({t_now, 0, next.leader.position, next.leader.velocity.norm(),
                                   next.leader.waypoint_index, false, -1, 0.0});
        }
        return next;
    }

    SimTrace run() const {
        SimTrace trace;
        trace.dt = cfg_.dt;
        SwarmState state = initial_state();
        const int max_ticks = static_cast<int>(std::llround(cfg_.duration / cfg_.dt));
        const int stall_window = std::max(1, static_cast<int>(std::llround(2.0 / cfg_.dt)));
        std::deque<Vec2> history;
        trace.reason = Termination::Timeout;
        for (int k = 0; k < max_ticks; ++k) {
            state = tick(state, &trace);
            ++trace.ticks;
            if (distance(state.leader.position, scene_.goal) < goal_tolerance_) {
                trace.reason = Termination::Reached;
                break;
            }
            history.push_back(state.leader.position);
            if (static_cast<int>(history.size()) > stall_window) {
                const Vec2 past = history.front();
                history.pop_front();
                if (distance(state.leader.position, past) < 0.01) {
                    trace.reason = Termination::Stall;
                    break;
                }
            }
        }
        return trace;
    }

private:
    void check_bounds(const Vec2& p, const char* who) const {
        if (!is_finite(p)) throw NonFiniteState(std::string(who) + " position is non-finite");
        if (!scene_.bounds.contains(p))
            throw OutOfBounds(std::string(who) + " left the arena bounds");
    }

    void apply_obstacle_impedance(FollowerState& f, Vec2& target, double t_now, double dt) const {
        const Vec2 correction = interact_with_nearest(f.interaction, target, scene_, db_, t_now,
                                                      dt, cfg_.use_accel_term);
        if (!cfg_.disable_obstacle_impedance) target += correction;
    }

    const Scene& scene_;
    const ImpedanceDb& db_;
    const WaypointPath& path_;
    FormationSpec formation_;
    ApfGains apf_;
    SimConfig cfg_;
    double goal_tolerance_;
};

// Records where any drone sits strictly inside an obstacle footprint at that
// record's time.
inline int execution_collision_check(const SimTrace& trace, const Scene& scene) {
    int collisions = 0;
    for (const auto& row : trace.rows) {
        for (const auto& o : scene.obstacles) {
            if (distance(row.pos, o.position_at(row.t)) - o.radius < 0.0) {
                ++collisions;
                break;
            }
        }
    }
    return collisions;
}

inline void write_trace_csv(const SimTrace& trace, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw Error("cannot open trace file for writing: " + path);
    f << "# swarmnav-trace-v1\n";
    f << "t,id,x,y,speed,wp_idx,near_human,class,delta\n";
    char line[256];
    for (const auto& r : trace.rows) {
        std::snprintf(line, sizeof(line), "%.6f,%d,%.6f,%.6f,%.6f,%d,%d,%s,%.6f\n", r.t, r.drone,
                      r.pos.x, r.pos.y, r.speed, r.wp_index, r.near_human ? 1 : 0,
                      r.cls >= 0 ? to_string(static_cast<ObstacleClass>(r.cls)) : "none", r.delta);
        f << line;
    }
    f << "# reason=" << to_string(trace.reason) << "\n";
}

}  // namespace swarmnav
