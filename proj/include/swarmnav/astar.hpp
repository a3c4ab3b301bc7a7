#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <vector>

#include "swarmnav/error.hpp"
#include "swarmnav/scene.hpp"

namespace swarmnav {

using PixelPath = std::vector<Cell>;

namespace detail {

inline constexpr double kSqrt2 = 1.4142135623730951;

// Octile distance; admissible and consistent for 8-connected unit/sqrt2 moves.
inline double octile(const Cell& a, const Cell& b) {
    const double dx = std::abs(a.x - b.x);
    const double dy = std::abs(a.y - b.y);
    return std::max(dx, dy) + (kSqrt2 - 1.0) * std::min(dx, dy);
}

struct OpenNode {
    double f;
    double g;
    std::int32_t idx;
    std::uint32_t order;
};

// Smaller f first; ties prefer larger g, then earlier insertion.
struct OpenNodeWorse {
    bool operator()(const OpenNode& a, const OpenNode& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.g != b.g) return a.g < b.g;
        return a.order > b.order;
    }
};

}  // namespace detail

// Minimum-cost 8-connected grid path (cost 1 straight, sqrt2 diagonal).
// Diagonal steps are rejected when either adjacent orthogonal cell is
// occupied, so extracted paths never cut corners. When expansion_f is given
// it receives the f value of every finalized node in dequeue order.
inline PixelPath astar_plan(const OccupancyGrid& grid, const Cell& start, const Cell& goal,
                            std::vector<double>* expansion_f = nullptr) {
    if (!grid.in_bounds(start) || !grid.in_bounds(goal))
        throw OutOfBounds("endpoint outside grid");
    if (grid.occupied(start) || grid.occupied(goal))
        throw OccupiedEndpoint("start or goal cell is occupied");

    const int w = grid.width;
    const int h = grid.height;
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> g_cost(n, inf);
    std::vector<std::int32_t> parent(n, -1);
    std::vector<std::uint8_t> closed(n, 0);

    auto at = [w](const Cell& c) { return static_cast<std::size_t>(c.y) * w + c.x; };

    std::priority_queue<detail::OpenNode, std::vector<detail::OpenNode>, detail::OpenNodeWorse> open;
    std::uint32_t order = 0;
    g_cost[at(start)] = 0.0;
    open.push({detail::octile(start, goal), 0.0, static_cast<std::int32_t>(at(start)), order++});

    static constexpr int dx[8] = {1, -1, 0, 0, 1, 1, -1, -1};
    static constexpr int dy[8] = {0, 0, 1, -1, 1, -1, 1, -1};
    static constexpr double step_cost[8] = {1, 1, 1, 1, detail::kSqrt2, detail::kSqrt2,
                                            detail::kSqrt2, detail::kSqrt2};

    const std::int32_t goal_idx = static_cast<std::int32_t>(at(goal));
    while (!open.empty()) {
        const auto node = open.top();
        open.pop();
        if (closed[node.idx]) continue;  // stale duplicate
        closed[node.idx] = 1;
        if (expansion_f) expansion_f->push_back(node.f);
        if (node.idx == goal_idx) break;

        const Cell cur{node.idx % w, node.idx / w};
        for (int k = 0; k < 8; ++k) {
            const Cell nb{cur.x + dx[k], cur.y + dy[k]};
            if (!grid.in_bounds(nb) || grid.occupied(nb)) continue;
            if (k >= 4) {
                if (grid.occupied({cur.x + dx[k], cur.y}) || grid.occupied({cur.x, cur.y + dy[k]}))
                    continue;
            }
            const std::size_t ni = at(nb);
            const double ng = node.g + step_cost[k];
            if (ng < g_cost[ni]) {
                g_cost[ni] = ng;
                parent[ni] = node.idx;
                open.push({ng + detail::octile(nb, goal), ng, static_cast<std::int32_t>(ni), order++});
            }
        }
    }

    if (!closed[goal_idx]) throw NoPath("goal unreachable");

    PixelPath path;
    for (std::int32_t i = goal_idx; i >= 0; i = parent[i]) {
        path.push_back({i % w, i / w});
        if (static_cast<std::size_t>(i) == at(start)) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

inline double path_cost(const PixelPath& path) {
    double c = 0.0;
    for (std::size_t i = 1; i < path.size(); ++i) {
        const bool diag = path[i].x != path[i - 1].x && path[i].y != path[i - 1].y;
        c += diag ? detail::kSqrt2 : 1.0;
    }
    return c;
}

}  // namespace swarmnav
