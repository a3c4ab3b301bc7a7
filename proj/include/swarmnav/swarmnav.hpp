#pragma once

#include "swarmnav/apf.hpp"
#include "swarmnav/astar.hpp"
#include "swarmnav/config.hpp"
#include "swarmnav/diffusion.hpp"
#include "swarmnav/error.hpp"
#include "swarmnav/formation.hpp"
#include "swarmnav/impedance_db.hpp"
#include "swarmnav/mask.hpp"
#include "swarmnav/metrics.hpp"
#include "swarmnav/obstacle_impedance.hpp"
#include "swarmnav/planner.hpp"
#include "swarmnav/rng.hpp"
#include "swarmnav/scene.hpp"
#include "swarmnav/schedule.hpp"
#include "swarmnav/sim.hpp"
#include "swarmnav/vec2.hpp"
#include "swarmnav/waypoints.hpp"
