#pragma once

#include "hyperconn/analytics.hpp"
#include "hyperconn/combinatorics.hpp"
#include "hyperconn/connectivity.hpp"
#include "hyperconn/edge_list.hpp"
#include "hyperconn/emit.hpp"
#include "hyperconn/errors.hpp"
#include "hyperconn/experiment.hpp"
#include "hyperconn/hypergraph.hpp"
#include "hyperconn/random_models.hpp"
#include "hyperconn/rng.hpp"
#include "hyperconn/stats.hpp"
#include "hyperconn/structure.hpp"
