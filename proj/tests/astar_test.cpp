#include "swarmnav/astar.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "swarmnav/mask.hpp"
#include "swarmnav/waypoints.hpp"
#include "testutil.hpp"

using namespace swarmnav;
using testutil::dijkstra_cost;
using testutil::make_grid;

TEST(AStar, StraightDiagonalCost) {
    const OccupancyGrid g = make_grid(10, 10);
    const PixelPath p = astar_plan(g, {0, 0}, {9, 9});
    EXPECT_NEAR(path_cost(p), 9.0 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(p.front(), (Cell{0, 0}));
    EXPECT_EQ(p.back(), (Cell{9, 9}));
}

TEST(AStar, WallBlocksPath) {
    OccupancyGrid g = make_grid(10, 10);
    for (int y = 0; y < 10; ++y) g.set_occupied({5, y}, true);
    EXPECT_THROW(astar_plan(g, {0, 0}, {9, 9}), NoPath);
}

TEST(AStar, OccupiedEndpointRejected) {
    OccupancyGrid g = make_grid(10, 10);
    g.set_occupied({0, 0}, true);
    EXPECT_THROW(astar_plan(g, {0, 0}, {9, 9}), OccupiedEndpoint);
}

TEST(AStar, ConsecutiveCellsEightConnectedAndFree) {
    std::mt19937 gen(42);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        OccupancyGrid g = make_grid(20, 20);
        for (int y = 0; y < 20; ++y)
            for (int x = 0; x < 20; ++x)
                if (u(gen) < 0.3) g.set_occupied({x, y}, true);
        g.set_occupied({0, 0}, false);
        g.set_occupied({19, 19}, false);
        PixelPath p;
        try {
            p = astar_plan(g, {0, 0}, {19, 19});
        } catch (const NoPath&) {
            continue;
        }
        for (std::size_t i = 0; i < p.size(); ++i) {
            EXPECT_FALSE(g.occupied(p[i]));
            if (i > 0) {
                EXPECT_LE(std::abs(p[i].x - p[i - 1].x), 1);
                EXPECT_LE(std::abs(p[i].y - p[i - 1].y), 1);
            }
        }
    }
}

TEST(AStar, MatchesDijkstraOnRandomGrids) {
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int solved = 0;
    for (int trial = 0; trial < 100; ++trial) {
        OccupancyGrid g = make_grid(20, 20);
        for (int y = 0; y < 20; ++y)
            for (int x = 0; x < 20; ++x)
                if (u(gen) < 0.3) g.set_occupied({x, y}, true);
        g.set_occupied({0, 0}, false);
        g.set_occupied({19, 19}, false);
        const double oracle = dijkstra_cost(g, {0, 0}, {19, 19});
        if (std::isinf(oracle)) {
            EXPECT_THROW(astar_plan(g, {0, 0}, {19, 19}), NoPath);
            continue;
        }
        const PixelPath p = astar_plan(g, {0, 0}, {19, 19});
        EXPECT_NEAR(path_cost(p), oracle, 1e-9);
        ++solved;
    }
    EXPECT_GT(solved, 20);  // the occupancy level leaves plenty of solvable grids
}

TEST(AStar, NoCornerCutting) {
    // Diagonal squeeze: both orthogonal neighbors of the (1,1) step occupied.
    OccupancyGrid g = make_grid(5, 5);
    g.set_occupied({1, 0}, true);
    g.set_occupied({0, 1}, true);
    EXPECT_THROW(astar_plan(g, {0, 0}, {4, 4}), NoPath);
}

TEST(AStar, DeterministicTieBreaking) {
    OccupancyGrid g = make_grid(30, 30);
    const PixelPath a = astar_plan(g, {2, 3}, {27, 20});
    const PixelPath b = astar_plan(g, {2, 3}, {27, 20});
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
}

TEST(PathToMask, ChannelSums) {
    const PixelPath p = {{1, 1}, {2, 2}, {3, 2}};
    const TrajectoryMask m = path_to_mask(p, 8, 8);
    EXPECT_DOUBLE_EQ(m.channel_sum(0), 1.0);
    EXPECT_DOUBLE_EQ(m.channel_sum(1), 1.0);
    EXPECT_DOUBLE_EQ(m.channel_sum(2), 3.0);
    EXPECT_DOUBLE_EQ(m.at(0, 1, 1), 1.0);
    EXPECT_DOUBLE_EQ(m.at(1, 2, 3), 1.0);
}

TEST(PathToMask, DilationGrowsPathChannel) {
    const PixelPath p = {{4, 4}};
    const TrajectoryMask m = path_to_mask(p, 9, 9, 1);
    EXPECT_DOUBLE_EQ(m.channel_sum(2), 9.0);
}

TEST(PathToMask, EmptyPathRejected) {
    EXPECT_THROW(path_to_mask({}, 8, 8), OutOfBounds);
}

TEST(PathToMask, OutOfRangeCellRejected) {
    EXPECT_THROW(path_to_mask({{8, 3}}, 8, 8), OutOfBounds);
}

TEST(PathToMask, RoundtripRecoversEndpointCells) {
    OccupancyGrid g = make_grid(20, 20, 0.05);
    for (int y = 5; y < 15; ++y) g.set_occupied({9, y}, true);
    const Cell start{2, 10};
    const Cell goal{17, 10};
    const PixelPath p = astar_plan(g, start, goal);
    const TrajectoryMask m = path_to_mask(p, 20, 20);
    const WaypointPath wp = mask_to_waypoints(m, start, goal, 0.05, g);
    EXPECT_FALSE(wp.fallback);
    EXPECT_EQ(g.world_to_cell(wp.points.front()), start);
    EXPECT_EQ(g.world_to_cell(wp.points.back()), goal);
}

TEST(AStar, ExpansionOrderMonotoneInF) {
    OccupancyGrid g = make_grid(15, 15);
    for (int x = 0; x < 14; ++x) g.set_occupied({x, 5}, true);
    for (int x = 1; x < 15; ++x) g.set_occupied({x, 10}, true);
    std::vector<double> expansion_f;
    const PixelPath p = astar_plan(g, {0, 0}, {14, 14}, &expansion_f);
    EXPECT_NEAR(path_cost(p), dijkstra_cost(g, {0, 0}, {14, 14}), 1e-9);
    for (std::size_t i = 1; i < expansion_f.size(); ++i)
        EXPECT_GE(expansion_f[i], expansion_f[i - 1] - 1e-12);
}
