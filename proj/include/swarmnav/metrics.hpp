#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "swarmnav/scene.hpp"
#include "swarmnav/vec2.hpp"

namespace swarmnav {

// Total arc length of the polyline.
inline double path_length(const std::vector<Vec2>& points) {
    double len = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) len += distance(points[i - 1], points[i]);
    return len;
}

// Fraction of sample points lying inside any inflated obstacle disk. Optional
// per-point times evaluate moving obstacles; an empty times vector means t=0
// everywhere. A planner-path quality score, distinct from execution
// collisions.
inline double collision_ratio(const std::vector<Vec2>& points, const Scene& scene,
                              double inflation, const std::vector<double>& times = {}) {
    if (points.empty()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double t = times.empty() ? 0.0 : times[i];
        for (const auto& o : scene.obstacles) {
            if (distance(points[i], o.position_at(t)) < o.radius + inflation) {
                ++hits;
                break;
            }
        }
    }
    return static_cast<double>(hits) / static_cast<double>(points.size());
}

inline double goal_error(const std::vector<Vec2>& points, const Vec2& goal) {
    return distance(points.back(), goal);
}

inline double wrap_angle(double a) {
    while (a > M_PI) a -= 2.0 * M_PI;
    while (a <= -M_PI) a += 2.0 * M_PI;
    return a;
}

// Cumulative absolute heading change over consecutive segments; zero-length
// segments carry no heading and are skipped.
inline double total_turning(const std::vector<Vec2>& points) {
    double total = 0.0;
    bool have_prev = false;
    double prev_heading = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        const Vec2 seg = points[i] - points[i - 1];
        if (seg.norm() == 0.0) continue;
        const double heading = std::atan2(seg.y, seg.x);
        if (have_prev) total += std::abs(wrap_angle(heading - prev_heading));
        prev_heading = heading;
        have_prev = true;
    }
    return total;
}

struct MetricsReport {
    double path_length = 0.0;
    double collision_ratio = 0.0;
    double goal_error = 0.0;
    double total_turning = 0.0;
    std::string scenario;
    std::string planner;
    std::uint64_t seed = 0;
};

inline MetricsReport evaluate_path(const std::vector<Vec2>& points, const Scene& scene,
                                   double inflation) {
    MetricsReport r;
    r.path_length = path_length(points);
    r.collision_ratio = collision_ratio(points, scene, inflation);
    r.goal_error = goal_error(points, scene.goal);
    r.total_turning = total_turning(points);
    return r;
}

}  // namespace swarmnav
