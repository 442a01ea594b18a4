#pragma once

// Linearly edge-reinforced random walks: simulation, exact path
// probabilities, the limiting occupation density and its samplers, conjugate
// Bayesian analysis, tree/urn equivalences, and infinite-strip experiments.

#include "errw/bayes.hpp"
#include "errw/density.hpp"
#include "errw/errors.hpp"
#include "errw/graph.hpp"
#include "errw/homology.hpp"
#include "errw/io.hpp"
#include "errw/ladder.hpp"
#include "errw/mcmc.hpp"
#include "errw/mixture.hpp"
#include "errw/path_prob.hpp"
#include "errw/random.hpp"
#include "errw/rational.hpp"
#include "errw/simplex.hpp"
#include "errw/spanning.hpp"
#include "errw/stats.hpp"
#include "errw/tree_rwre.hpp"
#include "errw/walk.hpp"
