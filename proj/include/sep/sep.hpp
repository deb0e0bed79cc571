#pragma once

// Umbrella header for the simulator library. The brute-force oracles live in
// sep/oracles.hpp and are included separately.

#include "sep/action.hpp"
#include "sep/contamination.hpp"
#include "sep/dynamics.hpp"
#include "sep/generators.hpp"
#include "sep/geometry.hpp"
#include "sep/grid.hpp"
#include "sep/grid_text.hpp"
#include "sep/perception.hpp"
#include "sep/rng.hpp"
#include "sep/sim_engine.hpp"
#include "sep/strategy_greedy.hpp"
#include "sep/strategy_sep.hpp"
#include "sep/trace_io.hpp"
