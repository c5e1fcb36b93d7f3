#pragma once

// Umbrella header for the solver library.

#include "pswidth/auto_decomposition.hpp"
#include "pswidth/bitset.hpp"
#include "pswidth/decomposition.hpp"
#include "pswidth/dimacs.hpp"
#include "pswidth/dp_solver.hpp"
#include "pswidth/errors.hpp"
#include "pswidth/formula.hpp"
#include "pswidth/interval.hpp"
#include "pswidth/oracle.hpp"
#include "pswidth/ps_engine.hpp"
