#pragma once

#include "matknap/arith.hpp"
#include "matknap/census.hpp"
#include "matknap/heisenberg.hpp"
#include "matknap/knapsack.hpp"
#include "matknap/lattice.hpp"
#include "matknap/matrix.hpp"
#include "matknap/mpoly.hpp"
#include "matknap/multrel.hpp"
#include "matknap/poly.hpp"
#include "matknap/spectra.hpp"
