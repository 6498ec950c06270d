#pragma once

// Umbrella header for the pseudorank library: mid-ranks and pseudo-ranks,
// relative treatment effects, rank / pseudo-rank tests, the population
// non-centrality oracle, confidence intervals, and the seeded Monte Carlo
// engine.

#include "pseudorank/analytic.hpp"
#include "pseudorank/confidence.hpp"
#include "pseudorank/distributions.hpp"
#include "pseudorank/effects.hpp"
#include "pseudorank/grouped_data.hpp"
#include "pseudorank/hypothesis_tests.hpp"
#include "pseudorank/ranking.hpp"
#include "pseudorank/rational.hpp"
#include "pseudorank/rng.hpp"
#include "pseudorank/simulate.hpp"
#include "pseudorank/special_functions.hpp"
#include "pseudorank/version.hpp"
