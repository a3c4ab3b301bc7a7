#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "swarmnav/mask.hpp"
#include "swarmnav/scene.hpp"
#include "swarmnav/vec2.hpp"

namespace swarmnav {

struct WaypointPath {
    std::vector<Vec2> points;
    bool fallback = false;  // set when the mask was empty and a straight segment was used
};

// Resamples a polyline to approximately uniform arc spacing; endpoints are
// always kept.
inline std::vector<Vec2> resample_polyline(const std::vector<Vec2>& pts, double spacing) {
    if (pts.size() <= 1 || spacing <= 0.0) return pts;
    std::vector<Vec2> out;
    out.push_back(pts.front());
    double since_last = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double seg = distance(pts[i - 1], pts[i]);
        since_last += seg;
        if (since_last >= spacing) {
            out.push_back(pts[i]);
            since_last = 0.0;
        }
    }
    if (!(out.back() == pts.back())) out.push_back(pts.back());
    return out;
}

inline std::vector<Vec2> straight_segment(const Vec2& a, const Vec2& b, double spacing) {
    const double d = distance(a, b);
    const int n = static_cast<int>(std::ceil(d / spacing)) + 1;
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double u = n > 1 ? static_cast<double>(i) / (n - 1) : 0.0;
        pts.push_back(a + (b - a) * u);
    }
    return pts;
}

// Converts a sampled mask into world waypoints. The path channel is
// thresholded at 0.5 and walked greedily from the start cell, hopping to the
// nearest unvisited lit pixel within the search radius until the goal cell is
// reached or no candidate remains. The walk is resampled to the requested
// spacing, and the exact start/goal positions replace the end cells. An empty
// path channel falls back to a straight start-goal segment with the fallback
// flag set.
inline WaypointPath mask_to_waypoints(const TrajectoryMask& mask, const Cell& start,
                                      const Cell& goal, double spacing,
                                      const OccupancyGrid& grid, double threshold = 0.5,
                                      int search_radius = 5) {
    const Vec2 start_w = grid.cell_center(start);
    const Vec2 goal_w = grid.cell_center(goal);

    std::vector<Cell> lit;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask.at(2, y, x) >= threshold) lit.push_back({x, y});

    WaypointPath out;
    if (lit.empty()) {
        out.points = straight_segment(start_w, goal_w, spacing);
        out.fallback = true;
        return out;
    }

    std::vector<std::uint8_t> visited(static_cast<std::size_t>(mask.height) * mask.width, 0);
    auto idx = [&](const Cell& c) { return static_cast<std::size_t>(c.y) * mask.width + c.x; };

    std::vector<Cell> walk;
    Cell cur = start;
    walk.push_back(cur);
    visited[idx(cur)] = 1;
    const double r2 = static_cast<double>(search_radius) * search_radius;
    while (!(cur == goal)) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < lit.size(); ++i) {
            const Cell& c = lit[i];
            if (visited[idx(c)]) continue;
            const double dx = c.x - cur.x;
            const double dy = c.y - cur.y;
            const double d = dx * dx + dy * dy;
            if (d <= r2 && d < best_d) {
                best_d = d;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        cur = lit[best];
        visited[idx(cur)] = 1;
        walk.push_back(cur);
    }

    std::vector<Vec2> pts;
    pts.reserve(walk.size());
    for (const Cell& c : walk) pts.push_back(grid.cell_center(c));
    if (!(walk.back() == goal)) pts.push_back(goal_w);

    out.points = resample_polyline(pts, spacing);
    out.points.front() = start_w;
    out.points.back() = goal_w;
    return out;
}

}  // namespace swarmnav
