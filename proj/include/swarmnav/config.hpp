#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "swarmnav/apf.hpp"
#include "swarmnav/error.hpp"
#include "swarmnav/formation.hpp"
#include "swarmnav/impedance_db.hpp"
#include "swarmnav/planner.hpp"
#include "swarmnav/scene.hpp"
#include "swarmnav/sim.hpp"

namespace swarmnav {

struct Scenario {
    std::string name;
    Scene scene;
    FormationSpec formation;
    ApfGains apf;
    PlannerConfig planner;
    SimConfig sim;
    ImpedanceDb db;
};

namespace detail {

using json = nlohmann::json;

inline Vec2 parse_vec2(const json& j, const std::string& what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw MalformedConfig(what + " must be a [x, y] number pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T field(const json& j, const std::string& key, const T& fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw MalformedConfig("field '" + key + "' has the wrong type");
    }
}

inline LinkParams parse_link_params(const json& j, const LinkParams& base) {
    LinkParams p = base;
    p.mass = field(j, "mass", p.mass);
    p.stiffness = field(j, "stiffness", p.stiffness);
    p.damping = field(j, "damping", p.damping);
    return p;
}

inline void apply_db_overrides(ImpedanceDb& db, const json& j) {
    for (const auto& [key, val] : j.items()) {
        const ObstacleClass cls = obstacle_class_from_string(key);
        ImpedanceProfile p = db.lookup(cls);
        if (val.contains("drone_drone")) p.drone_drone = parse_link_params(val["drone_drone"], p.drone_drone);
        if (val.contains("drone_obstacle"))
            p.drone_obstacle = parse_link_params(val["drone_obstacle"], p.drone_obstacle);
        p.separation = field(val, "separation", p.separation);
        p.deflection = field(val, "deflection", p.deflection);
        p.path_tolerance = field(val, "path_tolerance", p.path_tolerance);
        db.set(cls, p);
    }
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& j, const std::string& name = "scenario") {
    using detail::field;
    Scenario sc;
    sc.name = field<std::string>(j, "name", name);

    if (!j.contains("arena") || !j.contains("start") || !j.contains("goal"))
        throw MalformedConfig("scenario needs arena, start and goal");
    sc.scene.bounds.w = field(j.at("arena"), "w", 0.0);
    sc.scene.bounds.h = field(j.at("arena"), "h", 0.0);
    sc.scene.start = detail::parse_vec2(j.at("start"), "start");
    sc.scene.goal = detail::parse_vec2(j.at("goal"), "goal");

    int next_id = 0;
    for (const auto& jo : field(j, "obstacles", nlohmann::json::array())) {
        Obstacle o;
        o.id = next_id++;
        if (!jo.contains("class")) throw MalformedConfig("obstacle needs a class");
        o.cls = obstacle_class_from_string(jo.at("class").get<std::string>());
        o.center = detail::parse_vec2(jo.at("center"), "obstacle center");
        o.radius = field(jo, "radius", 0.0);
        o.group = field(jo, "group", -1);
        for (const auto& jk : field(jo, "motion", nlohmann::json::array())) {
            MotionKey k;
            k.t = field(jk, "t", 0.0);
            k.pos = detail::parse_vec2(jk.at("pos"), "motion key pos");
            o.motion.push_back(k);
        }
        sc.scene.obstacles.push_back(std::move(o));
    }
    sc.scene.validate();

    if (j.contains("formation")) {
        const auto& jf = j.at("formation");
        const int n = field(jf, "n_followers", 0);
        const double radius = field(jf, "radius", 0.5);
        const double beta = field(jf, "beta", 1.0);
        sc.formation = FormationSpec::even(n, radius, beta);
        if (jf.contains("theta") && jf.at("theta").is_array()) {
            sc.formation.theta.clear();
            for (const auto& th : jf.at("theta")) sc.formation.theta.push_back(th.get<double>());
            if (static_cast<int>(sc.formation.theta.size()) != n)
                throw MalformedConfig("theta list length must equal n_followers");
        }
        sc.formation.d_enter = field(jf, "d_enter", sc.formation.d_enter);
        sc.formation.d_exit = field(jf, "d_exit", sc.formation.d_exit);
        if (sc.formation.d_enter >= sc.formation.d_exit)
            throw MalformedConfig("d_enter must be < d_exit");
        if (sc.formation.radius <= 0.0) throw MalformedConfig("formation radius must be > 0");
    }

    if (j.contains("apf")) {
        const auto& ja = j.at("apf");
        sc.apf.k_att = field(ja, "k_att", sc.apf.k_att);
        sc.apf.k_rep = field(ja, "k_rep", sc.apf.k_rep);
        sc.apf.d_safe = field(ja, "d_safe", sc.apf.d_safe);
        sc.apf.speed_cap = field(ja, "speed_cap", sc.apf.speed_cap);
        if (sc.apf.k_att <= 0.0 || sc.apf.k_rep < 0.0 || sc.apf.d_safe <= 0.0 ||
            sc.apf.speed_cap <= 0.0)
            throw MalformedConfig("apf gains must be positive");
    }

    if (j.contains("planner")) {
        const auto& jp = j.at("planner");
        sc.planner.kind = planner_kind_from_string(field<std::string>(jp, "kind", "astar"));
        sc.planner.seed = field<std::uint64_t>(jp, "seed", 0);
        sc.planner.steps = field(jp, "steps", sc.planner.steps);
        sc.planner.resolution = field(jp, "resolution", sc.planner.resolution);
        sc.planner.inflation = field(jp, "inflation", sc.planner.inflation);
        sc.planner.wall_margin = field(jp, "wall_margin", sc.planner.wall_margin);
        sc.planner.spacing = field(jp, "spacing", sc.planner.spacing);
        sc.planner.denoiser = field<std::string>(jp, "denoiser", sc.planner.denoiser);
        sc.planner.blend_gamma = field(jp, "blend_gamma", sc.planner.blend_gamma);
        sc.planner.dilate_radius = field(jp, "dilate", sc.planner.dilate_radius);
        if (sc.planner.steps < 2) throw MalformedConfig("planner.steps must be >= 2");
        if (sc.planner.resolution <= 0.0) throw MalformedConfig("planner.resolution must be > 0");
        if (sc.planner.spacing <= 0.0) throw MalformedConfig("planner.spacing must be > 0");
    }

    if (j.contains("sim")) {
        const auto& js = j.at("sim");
        sc.sim.dt = field(js, "dt", sc.sim.dt);
        sc.sim.duration = field(js, "duration", sc.sim.duration);
        sc.sim.speed_cap = field(js, "speed_cap", sc.sim.speed_cap);
        sc.sim.use_accel_term = field(js, "use_accel_term", sc.sim.use_accel_term);
        sc.sim.disable_repulsion = field(js, "disable_repulsion", sc.sim.disable_repulsion);
        sc.sim.disable_obstacle_impedance =
            field(js, "disable_obstacle_impedance", sc.sim.disable_obstacle_impedance);
        if (sc.sim.dt <= 0.0 || sc.sim.duration <= 0.0 || sc.sim.speed_cap <= 0.0)
            throw MalformedConfig("sim block needs positive dt, duration and speed_cap");
    }

    // "db" takes either inline overrides or a path to an override file with
    // the same per-class layout.
    if (j.contains("db")) {
        const auto& jdb = j.at("db");
        if (jdb.is_string()) {
            std::ifstream f(jdb.get<std::string>());
            if (!f) throw MalformedConfig("cannot open db override file: " + jdb.get<std::string>());
            nlohmann::json loaded;
            try {
                f >> loaded;
            } catch (const nlohmann::json::exception& e) {
                throw MalformedConfig(std::string("db override parse error: ") + e.what());
            }
            detail::apply_db_overrides(sc.db, loaded);
        } else {
            detail::apply_db_overrides(sc.db, jdb);
        }
    }
    return sc;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw MalformedConfig("cannot open scenario file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedConfig("scenario parse error in " + path + ": " + e.what());
    }
    std::string name = path;
    const auto slash = name.find_last_of('/');
    if (slash != std::string::npos) name = name.substr(slash + 1);
    const auto dot = name.find_last_of('.');
    if (dot != std::string::npos) name = name.substr(0, dot);
    return parse_scenario(j, name);
}

}  // namespace swarmnav
