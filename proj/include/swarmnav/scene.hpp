#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "swarmnav/error.hpp"
#include "swarmnav/vec2.hpp"

namespace swarmnav {

enum class ObstacleClass { Cylinder, Chair, Trolley, Gate, Human };

enum class Softness { Hard, Soft };

inline Softness softness_of(ObstacleClass c) {
    return c == ObstacleClass::Human ? Softness::Soft : Softness::Hard;
}

inline const char* to_string(ObstacleClass c) {
    switch (c) {
        case ObstacleClass::Cylinder: return "cylinder";
        case ObstacleClass::Chair: return "chair";
        case ObstacleClass::Trolley: return "trolley";
        case ObstacleClass::Gate: return "gate";
        case ObstacleClass::Human: return "human";
    }
    return "?";
}

inline ObstacleClass obstacle_class_from_string(const std::string& s) {
    if (s == "cylinder") return ObstacleClass::Cylinder;
    if (s == "chair") return ObstacleClass::Chair;
    if (s == "trolley") return ObstacleClass::Trolley;
    if (s == "gate") return ObstacleClass::Gate;
    if (s == "human") return ObstacleClass::Human;
    throw UnknownClass("unknown obstacle class: " + s);
}

struct MotionKey {
    double t = 0.0;
    Vec2 pos;
};

struct Obstacle {
    int id = 0;
    ObstacleClass cls = ObstacleClass::Cylinder;
    Vec2 center;
    double radius = 0.0;
    std::vector<MotionKey> motion;  // empty for static obstacles
    int group = -1;                 // shared by gate halves; -1 means id

    Softness softness() const { return softness_of(cls); }
    int group_id() const { return group >= 0 ? group : id; }

    // Piecewise-linear interpolation of the schedule; before the first key the
    // first position holds, after the last key the last position holds.
    Vec2 position_at(double t) const {
        if (motion.empty()) return center;
        if (t <= motion.front().t) return motion.front().pos;
        if (t >= motion.back().t) return motion.back().pos;
        for (std::size_t i = 1; i < motion.size(); ++i) {
            if (t <= motion[i].t) {
                const auto& a = motion[i - 1];
                const auto& b = motion[i];
                const double u = (t - a.t) / (b.t - a.t);
                return a.pos + (b.pos - a.pos) * u;
            }
        }
        return motion.back().pos;
    }

    void validate() const {
        if (radius <= 0.0) throw InvalidScene("obstacle radius must be > 0");
        for (std::size_t i = 1; i < motion.size(); ++i) {
            if (motion[i].t <= motion[i - 1].t)
                throw InvalidScene("motion schedule times must be strictly increasing");
        }
    }
};

struct Rect {
    double w = 0.0;
    double h = 0.0;

    bool contains(const Vec2& p) const {
        return p.x >= 0.0 && p.y >= 0.0 && p.x <= w && p.y <= h;
    }
};

struct Scene {
    Rect bounds;
    std::vector<Obstacle> obstacles;
    Vec2 start;
    Vec2 goal;

    void validate() const {
        if (bounds.w <= 0.0 || bounds.h <= 0.0) throw InvalidScene("arena must have positive extent");
        if (!bounds.contains(start)) throw InvalidScene("start outside arena bounds");
        if (!bounds.contains(goal)) throw InvalidScene("goal outside arena bounds");
        for (const auto& o : obstacles) {
            o.validate();
            const Vec2 p = o.position_at(0.0);
            if (p.x - o.radius < 0.0 || p.y - o.radius < 0.0 ||
                p.x + o.radius > bounds.w || p.y + o.radius > bounds.h)
                throw InvalidScene("obstacle footprint outside arena bounds at t=0");
            if (distance(start, p) <= o.radius) throw InvalidScene("start inside obstacle footprint");
            if (distance(goal, p) <= o.radius) throw InvalidScene("goal inside obstacle footprint");
        }
    }
};

struct Cell {
    int x = 0;
    int y = 0;
    bool operator==(const Cell& o) const { return x == o.x && y == o.y; }
};

struct OccupancyGrid {
    int width = 0;
    int height = 0;
    double resolution = 0.0;  // meters per pixel
    Vec2 origin;              // world coordinate of the corner of pixel (0,0)
    std::vector<std::uint8_t> cells;

    bool in_bounds(const Cell& c) const {
        return c.x >= 0 && c.y >= 0 && c.x < width && c.y < height;
    }
    bool occupied(const Cell& c) const { return cells[static_cast<std::size_t>(c.y) * width + c.x] != 0; }
    void set_occupied(const Cell& c, bool v) { cells[static_cast<std::size_t>(c.y) * width + c.x] = v ? 1 : 0; }

    Vec2 cell_center(const Cell& c) const {
        return {origin.x + (c.x + 0.5) * resolution, origin.y + (c.y + 0.5) * resolution};
    }
    Cell world_to_cell(const Vec2& p) const {
        Cell c{static_cast<int>(std::floor((p.x - origin.x) / resolution)),
               static_cast<int>(std::floor((p.y - origin.y) / resolution))};
        c.x = std::clamp(c.x, 0, width - 1);
        c.y = std::clamp(c.y, 0, height - 1);
        return c;
    }
};

inline constexpr std::size_t kDefaultGridCellCap = 16u * 1024u * 1024u;

// Cell centers within (radius + inflation) of any obstacle position at time t
// are marked occupied.
inline OccupancyGrid rasterize(const Scene& scene, double resolution, double inflation,
                               double t = 0.0, std::size_t cell_cap = kDefaultGridCellCap) {
    if (resolution <= 0.0) throw MalformedConfig("resolution must be > 0");
    if (inflation < 0.0) throw MalformedConfig("inflation must be >= 0");
    OccupancyGrid g;
    g.resolution = resolution;
    g.origin = {0.0, 0.0};
    g.width = std::max(1, static_cast<int>(std::ceil(scene.bounds.w / resolution)));
    g.height = std::max(1, static_cast<int>(std::ceil(scene.bounds.h / resolution)));
    const std::size_t n = static_cast<std::size_t>(g.width) * g.height;
    if (n > cell_cap) throw GridTooLarge("grid exceeds cell cap");
    g.cells.assign(n, 0);
    for (const auto& o : scene.obstacles) {
        const Vec2 p = o.position_at(t);
        const double r = o.radius + inflation;
        const int x0 = std::max(0, static_cast<int>(std::floor((p.x - r) / resolution)) - 1);
        const int x1 = std::min(g.width - 1, static_cast<int>(std::ceil((p.x + r) / resolution)) + 1);
        const int y0 = std::max(0, static_cast<int>(std::floor((p.y - r) / resolution)) - 1);
        const int y1 = std::min(g.height - 1, static_cast<int>(std::ceil((p.y + r) / resolution)) + 1);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const Cell c{x, y};
                if (distance(g.cell_center(c), p) <= r) g.set_occupied(c, true);
            }
        }
    }
    return g;
}

// Minimum surface distance from point to any obstacle matching pred at time t,
// clamped at zero; +infinity when nothing matches.
template <typename Pred>
double min_distance(const Vec2& point, const Scene& scene, Pred&& pred, double t) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : scene.obstacles) {
        if (!pred(o)) continue;
        const double d = std::max(0.0, distance(point, o.position_at(t)) - o.radius);
        best = std::min(best, d);
    }
    return best;
}

inline double min_distance_to_class(const Vec2& point, const Scene& scene, ObstacleClass cls,
                                    double t) {
    return min_distance(point, scene, [cls](const Obstacle& o) { return o.cls == cls; }, t);
}

inline double min_distance_to_any(const Vec2& point, const Scene& scene, double t) {
    return min_distance(point, scene, [](const Obstacle&) { return true; }, t);
}

}  // namespace swarmnav
