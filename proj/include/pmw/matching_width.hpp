#pragma once

#include <string>
#include <vector>

#include "pmw/graph.hpp"
#include "pmw/matching.hpp"
#include "pmw/product_graph.hpp"

namespace pmw {

struct PmwConfig {
    int perm_cap = 9; // largest |V| whose permutations will be enumerated
};

// Largest k such that every ordering of v_set has a prefix with a matching of
// size k between the prefix and the rest of the graph. Brute force over all
// orderings with per-prefix-set memoization. Throws CapExceeded past the cap.
int pmw_exact(const Graph& g, const std::vector<int>& v_set, const PmwConfig& cfg = {});

// A matching together with the prefix length of the ordering split supporting
// it: every edge either joins the prefix to the suffix, or joins v_set to the
// rest of the graph.
struct WitnessingMatching {
    Matching m;
    int split = 0; // |SV1|
};

// Best supported matching for one ordering, exhaustive over split positions;
// exact via general matching (support graphs contain odd cycles). Ties prefer
// the smallest split.
WitnessingMatching witnessing_matching_exact(const Graph& g, const std::vector<int>& v_set,
                                             const std::vector<int>& sv);

// Definition-level check of the support conditions; independent of any of the
// constructions below.
bool is_witnessing(const Graph& g, const std::vector<int>& v_set, const std::vector<int>& sv,
                   const WitnessingMatching& w, std::string* why = nullptr);

// Minimum over all orderings of v_set of the best supported-matching size
// (lattice dynamic program over prefix sets; same cap as pmw_exact).
int min_witnessing_size_over_orders(const Graph& g, const std::vector<int>& v_set,
                                    const PmwConfig& cfg = {});

// Converts a supported matching into a prefix and a matching of at least half
// the size between that prefix and the rest of the graph: cross-split edges
// keep the split prefix, edges leaving v_set take the whole ordering.
struct PrefixMatching {
    int prefix_len = 0;
    Matching m;
};
PrefixMatching witness_to_prefix(const WitnessingMatching& w, const Graph& g,
                                 const std::vector<int>& v_set, const std::vector<int>& sv);

// For each listed pattern index, walks the tree path between two nodes and
// takes the first copy-to-copy edge whose ends have different roles. Requires
// the roles at the two endpoints to differ for every listed index; the results
// are vertex-disjoint across indices.
Matching matching_from_role_path(const ProductGraph& p, int node_u, int node_v,
                                 const std::vector<int>& indices, const RolePartition& parts);

// Region = set of tree nodes; it must contain the tree path between any two of
// its members (true for whole trees and for complements of full subtrees).

// Given a partition of a vertex set V into two parts inside the region's
// copies, produces a matching of size >= p whose edge ends carry different
// roles. Requires: region size >= p, pattern connected with >= 2p vertices,
// every region copy meets V, and both parts leave at least p^2 of the region's
// product vertices uncovered.
Matching matching_goodpart3(const ProductGraph& p, const std::vector<int>& region,
                            const RolePartition& parts, int pp);

// Whole-tree form: v_set must be the disjoint union of the two parts and must
// occupy every tree node.
Matching matching_goodpart3(const ProductGraph& p, const std::vector<int>& v_set,
                            const std::vector<int>& v1, const std::vector<int>& v2, int pp);

// Produces a matching of size >= p between V and the rest of the region's
// copies. Requires: pattern connected with >= p vertices, at least p occupied
// region nodes, and at least one unoccupied region node.
Matching matching_goodpart1(const ProductGraph& p, const std::vector<int>& region,
                            const std::vector<int>& v_set, int pp);

// Whole-tree form.
Matching matching_goodpart1(const ProductGraph& p, const std::vector<int>& v_set, int pp);

// Supported-matching construction under full occupancy: returns a matching of
// size >= p * (tr(|T|) - tr(p)) whose split leaves at least p^2 product
// vertices outside each side. Requires pattern connected with >= 2p vertices,
// tree with >= p nodes, every tree node occupied.
WitnessingMatching perfpart_witness(const ProductGraph& p, const std::vector<int>& v_set,
                                    const std::vector<int>& sv, int pp);

// Chain of nested immediate subtrees, each chosen with the most occupied
// nodes (ties to the lowest child), stopped at the first whose occupied count
// lags the root's by at least p.
struct SubtreeStep {
    int root = 0;
    std::vector<int> v_set; // V restricted to the subtree's copies
    int oc_size = 0;
};
struct SubtreeSequence {
    std::vector<SubtreeStep> steps;
};
SubtreeSequence minimal_largest_subtree_sequence(const ProductGraph& p,
                                                 const std::vector<int>& v_set, int pp);

// Supported-matching construction under partial occupancy: returns a matching
// of size >= p * floor((x - tr(p)) / 2) where x = tr(#occupied nodes).
// Requires pattern connected with >= 2p vertices and at least p occupied nodes.
WitnessingMatching mwmain_witness(const ProductGraph& p, const std::vector<int>& v_set,
                                  const std::vector<int>& sv, int pp);

} // namespace pmw
