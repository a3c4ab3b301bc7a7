#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "swarmnav/astar.hpp"
#include "swarmnav/diffusion.hpp"
#include "swarmnav/impedance_db.hpp"
#include "swarmnav/mask.hpp"
#include "swarmnav/scene.hpp"
#include "swarmnav/waypoints.hpp"

namespace swarmnav {

enum class PlannerKind { AStar, Diffusion1, Diffusion2 };

inline const char* to_string(PlannerKind k) {
    switch (k) {
        case PlannerKind::AStar: return "astar";
        case PlannerKind::Diffusion1: return "diffusion1";
        case PlannerKind::Diffusion2: return "diffusion2";
    }
    return "?";
}

inline PlannerKind planner_kind_from_string(const std::string& s) {
    if (s == "astar") return PlannerKind::AStar;
    if (s == "diffusion1") return PlannerKind::Diffusion1;
    if (s == "diffusion2") return PlannerKind::Diffusion2;
    throw MalformedConfig("unknown planner kind: " + s);
}

struct PlannerConfig {
    PlannerKind kind = PlannerKind::AStar;
    std::uint64_t seed = 0;
    int steps = 100;            // diffusion steps T
    double resolution = 0.02;   // m per pixel
    double inflation = -1.0;    // <0: max separation distance of classes present
    double wall_margin = 0.45;  // boundary band kept non-traversable
    double spacing = 0.15;      // waypoint spacing, m
    std::string denoiser = "oracle";  // oracle | blend
    double blend_gamma = 0.5;
    int dilate_radius = 0;
};

struct PlanResult {
    WaypointPath path;
    TrajectoryMask mask;
    OccupancyGrid grid;
    double plan_seconds = 0.0;             // informational wall-clock
    std::optional<Cell> intermediate;      // set for two-stage plans
};

inline double default_inflation(const Scene& scene, const ImpedanceDb& db) {
    double infl = 0.0;
    bool any = false;
    for (const auto& o : scene.obstacles) {
        infl = std::max(infl, db.lookup(o.cls).separation);
        any = true;
    }
    return any ? infl : 0.0;
}

namespace detail {

// Nearest free cell to the start-goal segment midpoint, found by ring search.
inline Cell free_cell_near_midpoint(const OccupancyGrid& grid, const Vec2& start, const Vec2& goal) {
    const Cell mid = grid.world_to_cell((start + goal) * 0.5);
    if (!grid.occupied(mid)) return mid;
    for (int r = 1; r < std::max(grid.width, grid.height); ++r) {
        Cell best;
        double best_d = std::numeric_limits<double>::infinity();
        bool found = false;
        for (int dy = -r; dy <= r; ++dy) {
            for (int dx = -r; dx <= r; ++dx) {
                if (std::max(std::abs(dx), std::abs(dy)) != r) continue;
                const Cell c{mid.x + dx, mid.y + dy};
                if (!grid.in_bounds(c) || grid.occupied(c)) continue;
                const double d = dx * dx + dy * dy;
                if (d < best_d) {
                    best_d = d;
                    best = c;
                    found = true;
                }
            }
        }
        if (found) return best;
    }
    throw NoPath("no free cell near segment midpoint");
}

inline std::unique_ptr<Denoiser> make_denoiser(const PlannerConfig& cfg) {
    if (cfg.denoiser == "oracle") return std::make_unique<OracleDenoiser>(cfg.dilate_radius);
    if (cfg.denoiser == "blend")
        return std::make_unique<BlendDenoiser>(cfg.blend_gamma, cfg.dilate_radius);
    throw MalformedConfig("unknown denoiser: " + cfg.denoiser);
}

}  // namespace detail

// Stage 1 samples start -> intermediate, stage 2 intermediate -> goal; the
// concatenation drops the duplicated junction point.
inline WaypointPath two_stage_plan(const Denoiser& denoiser, const Scene& scene,
                                   const OccupancyGrid& grid, const NoiseSchedule& sched,
                                   std::uint64_t seed, double spacing, Cell* intermediate_out = nullptr,
                                   TrajectoryMask* mask_out = nullptr,
                                   const Cell* force_intermediate = nullptr) {
    const Cell start = grid.world_to_cell(scene.start);
    const Cell goal = grid.world_to_cell(scene.goal);
    const Cell mid = force_intermediate ? *force_intermediate
                                        : detail::free_cell_near_midpoint(grid, scene.start, scene.goal);
    if (intermediate_out) *intermediate_out = mid;

    const DenoiseContext ctx1{&grid, start, mid};
    const DenoiseContext ctx2{&grid, mid, goal};
    const TrajectoryMask m1 = sample(denoiser, ctx1, sched, seed);
    const TrajectoryMask m2 = sample(denoiser, ctx2, sched, seed + 1);
    WaypointPath p1 = mask_to_waypoints(m1, start, mid, spacing, grid);
    WaypointPath p2 = mask_to_waypoints(m2, mid, goal, spacing, grid);

    if (mask_out) {
        TrajectoryMask merged = m1;
        const std::size_t plane = static_cast<std::size_t>(merged.height) * merged.width;
        for (std::size_t i = 2 * plane; i < 3 * plane; ++i)
            merged.data[i] = std::max(merged.data[i], m2.data[i]);
        inpaint_endpoints(merged, start, goal);
        *mask_out = merged;
    }

    WaypointPath out;
    out.fallback = p1.fallback || p2.fallback;
    out.points = std::move(p1.points);
    out.points.insert(out.points.end(), p2.points.begin() + 1, p2.points.end());
    return out;
}

// Unified planning entry: rasterizes the scene at t=0, runs the requested
// planner, and returns world waypoints plus the mask and grid used.
inline PlanResult plan_scene(const Scene& scene, const PlannerConfig& cfg, const ImpedanceDb& db) {
    PlanResult result;
    const double inflation = cfg.inflation >= 0.0 ? cfg.inflation : default_inflation(scene, db);
    result.grid = rasterize(scene, cfg.resolution, inflation, 0.0);
    if (cfg.wall_margin > 0.0) {
        // Keep the corridor off the arena walls so formation offsets stay
        // inside the bounds.
        OccupancyGrid& g = result.grid;
        for (int y = 0; y < g.height; ++y) {
            for (int x = 0; x < g.width; ++x) {
                const Vec2 c = g.cell_center({x, y});
                if (c.x < cfg.wall_margin || c.y < cfg.wall_margin ||
                    c.x > scene.bounds.w - cfg.wall_margin ||
                    c.y > scene.bounds.h - cfg.wall_margin)
                    g.set_occupied({x, y}, true);
            }
        }
    }
    const OccupancyGrid& grid = result.grid;
    const Cell start = grid.world_to_cell(scene.start);
    const Cell goal = grid.world_to_cell(scene.goal);
    if (grid.occupied(start) || grid.occupied(goal))
        throw OccupiedEndpoint("start or goal lies inside the inflated obstacle set");

    const auto t0 = std::chrono::steady_clock::now();
    switch (cfg.kind) {
        case PlannerKind::AStar: {
            const PixelPath cells = astar_plan(grid, start, goal);
            result.mask = path_to_mask(cells, grid.height, grid.width, cfg.dilate_radius);
            std::vector<Vec2> pts;
            pts.reserve(cells.size());
            for (const Cell& c : cells) pts.push_back(grid.cell_center(c));
            result.path.points = resample_polyline(pts, cfg.spacing);
            break;
        }
        case PlannerKind::Diffusion1: {
            const auto denoiser = detail::make_denoiser(cfg);
            const NoiseSchedule sched = cosine_schedule(cfg.steps);
            const DenoiseContext ctx{&grid, start, goal};
            result.mask = sample(*denoiser, ctx, sched, cfg.seed);
            result.path = mask_to_waypoints(result.mask, start, goal, cfg.spacing, grid);
            break;
        }
        case PlannerKind::Diffusion2: {
            const auto denoiser = detail::make_denoiser(cfg);
            const NoiseSchedule sched = cosine_schedule(cfg.steps);
            Cell mid;
            result.path = two_stage_plan(*denoiser, scene, grid, sched, cfg.seed, cfg.spacing,
                                         &mid, &result.mask);
            result.intermediate = mid;
            break;
        }
    }
    result.plan_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (result.path.points.empty()) throw NoPath("planner produced no waypoints");
    result.path.points.front() = scene.start;
    result.path.points.back() = scene.goal;
    return result;
}

}  // namespace swarmnav
