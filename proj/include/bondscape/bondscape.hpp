#pragma once

// Umbrella header: the whole simulator.

#include "bondscape/agent.hpp"
#include "bondscape/config.hpp"
#include "bondscape/config_io.hpp"
#include "bondscape/engine.hpp"
#include "bondscape/experiments.hpp"
#include "bondscape/io.hpp"
#include "bondscape/landscape.hpp"
#include "bondscape/metrics.hpp"
#include "bondscape/rng.hpp"
#include "bondscape/trading.hpp"
