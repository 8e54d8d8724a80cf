#pragma once

// Representations of bidirected graphs and quivers, the doubling reduction,
// the matrix-pair similarity encoding, primary matrix square roots, and
// near-identity isomorphism recovery with its empirical Lipschitz lab.

#include "birep/doubling.hpp"
#include "birep/errors.hpp"
#include "birep/graph.hpp"
#include "birep/iso_solver.hpp"
#include "birep/isomorphism.hpp"
#include "birep/json_io.hpp"
#include "birep/linalg.hpp"
#include "birep/lipschitz_lab.hpp"
#include "birep/matfun.hpp"
#include "birep/pair_encoding.hpp"
#include "birep/representation.hpp"
