#pragma once

// Convenience header pulling in the whole library.

#include "bilocal.hpp"
#include "circuit.hpp"
#include "correlators.hpp"
#include "errors.hpp"
#include "fit.hpp"
#include "inequalities.hpp"
#include "io.hpp"
#include "network.hpp"
#include "optimizer.hpp"
#include "parallel.hpp"
#include "quantum.hpp"
#include "rng.hpp"
#include "symmetric.hpp"
#include "tetra.hpp"
#include "version.hpp"
