#pragma once

// Umbrella header for the crnbal library.

#include "crnbal/algebra.hpp"
#include "crnbal/balance.hpp"
#include "crnbal/core.hpp"
#include "crnbal/error.hpp"
#include "crnbal/parser.hpp"
#include "crnbal/rational.hpp"
#include "crnbal/report.hpp"
#include "crnbal/stochastic.hpp"
#include "crnbal/vec.hpp"
