#pragma once

// Umbrella header.

#include "mhd1d/accumulators.hpp"
#include "mhd1d/config.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/functionals.hpp"
#include "mhd1d/grid.hpp"
#include "mhd1d/integrator.hpp"
#include "mhd1d/io.hpp"
#include "mhd1d/physics.hpp"
#include "mhd1d/run.hpp"
#include "mhd1d/scenarios.hpp"
#include "mhd1d/tridiagonal.hpp"
#include "mhd1d/verification.hpp"
