#pragma once

#include <utility>
#include <vector>

#include "pmw/graph.hpp"

namespace pmw {

using MatchEdge = std::pair<int, int>;
using Matching = std::vector<MatchEdge>;

// Edges exist in g and are pairwise vertex-disjoint.
bool is_matching(const Graph& g, const Matching& m);

// Maximum matching using only edges with one end in a_set and the other
// outside it. Augmenting-path search; the returned matching admits no
// augmenting path, which certifies maximality for this bipartite case.
Matching max_matching_across_cut(const Graph& g, const std::vector<int>& a_set);

// Maximum matching in an arbitrary edge list on vertices 0..n-1 (general
// graphs; handles odd cycles via blossom contraction).
Matching max_matching_in_edges(int n, const std::vector<MatchEdge>& edges);

} // namespace pmw
