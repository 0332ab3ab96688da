#pragma once

// Umbrella header.

#include "graphlearn/edge_space.hpp"
#include "graphlearn/experiment.hpp"
#include "graphlearn/generators.hpp"
#include "graphlearn/io.hpp"
#include "graphlearn/metrics.hpp"
#include "graphlearn/random.hpp"
#include "graphlearn/solvers.hpp"
#include "graphlearn/spectral.hpp"
