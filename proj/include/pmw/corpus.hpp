#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pmw/cnf.hpp"
#include "pmw/graph.hpp"

namespace pmw {

using Rng = std::mt19937_64;

// Smallest packed upper-triangle adjacency code over all vertex relabelings,
// column-major so branch-and-bound can prune on placement prefixes. Equal
// codes are exactly the isomorphic graphs. Requires n <= 11 (code in 64 bits).
std::uint64_t canonical_code(const Graph& g);

// One representative per isomorphism class, every graph on exactly n
// vertices, ordered by canonical code. Built by vertex extension from the
// (n-1)-vertex classes. Requires 1 <= n <= 8.
std::vector<Graph> graphs_up_to_iso(int n);

// The connected ones, same order.
std::vector<Graph> connected_graphs_up_to_iso(int n);

// Spanning tree by random attachment under the degree cap, then a random
// sprinkle of extra edges. Requires a cap the tree can satisfy.
Graph random_connected_graph_max_degree(int n, int max_degree, Rng& rng);

// Random edge subset under the degree cap; density varies across draws.
Graph random_graph_max_degree(int n, int max_degree, Rng& rng);

// Clauses of width in [min_width, max_width] over distinct variables, signs
// random except that a planted random model is kept satisfying, so the result
// always has models.
Cnf random_satisfiable_cnf(int num_vars, int num_clauses, int min_width, int max_width, Rng& rng);

std::vector<int> random_order(int n, Rng& rng);

// Keeps round(ratio * |f|) models, at least one, deleting uniformly.
ModelSet random_submodel_set(const ModelSet& f, double ratio, Rng& rng);

} // namespace pmw
