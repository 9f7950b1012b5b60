#pragma once

// Umbrella header for the tensor variational inequality toolkit.

#include "tvi/tensor.hpp"
#include "tvi/sets.hpp"
#include "tvi/problem.hpp"
#include "tvi/solver.hpp"
#include "tvi/checks.hpp"
#include "tvi/game.hpp"
#include "tvi/io.hpp"
