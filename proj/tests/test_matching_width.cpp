#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "pmw/corpus.hpp"
#include "pmw/errors.hpp"
#include "pmw/graph.hpp"
#include "pmw/matching.hpp"
#include "pmw/matching_width.hpp"
#include "pmw/product_graph.hpp"
#include "pmw/ternary_tree.hpp"

using namespace pmw;

namespace {

// Reference maximum matching: try every subset of the edge list.
int brute_max_matching(int n, const std::vector<MatchEdge>& edges) {
    const std::size_t m = edges.size();
    int best = 0;
    for (std::size_t pick = 0; pick < (std::size_t{1} << m); ++pick) {
        std::uint64_t used = 0;
        bool ok = true;
        int size = 0;
        for (std::size_t i = 0; i < m && ok; ++i) {
            if (!(pick >> i & 1u)) continue;
            const std::uint64_t ends =
                (std::uint64_t{1} << edges[i].first) | (std::uint64_t{1} << edges[i].second);
            if (used & ends) ok = false;
            used |= ends;
            ++size;
        }
        if (ok) best = std::max(best, size);
    }
    (void)n;
    return best;
}

std::vector<MatchEdge> cut_edges(const Graph& g, const std::vector<int>& a_set) {
    std::vector<char> in(static_cast<std::size_t>(g.num_vertices()), 0);
    for (int v : a_set) in[static_cast<std::size_t>(v)] = 1;
    std::vector<MatchEdge> out;
    for (const auto& e : g.edges())
        if (in[static_cast<std::size_t>(e.first)] != in[static_cast<std::size_t>(e.second)])
            out.push_back(e);
    return out;
}

} // namespace

TEST_CASE("cut matcher against subset brute force") {
    Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = random_graph_max_degree(n, n - 1, rng);
        std::vector<int> a_set;
        for (int v = 0; v < n; ++v)
            if (rng() % 2) a_set.push_back(v);
        const Matching m = max_matching_across_cut(g, a_set);
        CHECK(is_matching(g, m));
        for (const auto& [u, v] : m) {
            const bool ua = std::find(a_set.begin(), a_set.end(), u) != a_set.end();
            const bool va = std::find(a_set.begin(), a_set.end(), v) != a_set.end();
            CHECK(ua != va);
        }
        CHECK(static_cast<int>(m.size()) == brute_max_matching(n, cut_edges(g, a_set)));
    }
}

TEST_CASE("general matcher against subset brute force") {
    Rng rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = random_graph_max_degree(n, n - 1, rng);
        const auto edges = g.edges();
        const Matching m = max_matching_in_edges(n, edges);
        CHECK(static_cast<int>(m.size()) == brute_max_matching(n, edges));
    }
    // odd cycle needs blossom handling
    const Graph c5 = cycle_graph(5);
    CHECK(max_matching_in_edges(5, c5.edges()).size() == 2);
    const Graph c9 = cycle_graph(9);
    CHECK(max_matching_in_edges(9, c9.edges()).size() == 4);
}

TEST_CASE("pmw on small named graphs") {
    const Graph edge = path_graph(2);
    CHECK(pmw_exact(edge, {0, 1}) == 1);
    CHECK(pmw_exact(edge, {0}) == 1);
    CHECK(pmw_exact(edge, {}) == 0);

    const Graph star = star_graph(3); // center 0
    CHECK(pmw_exact(star, {1, 2, 3}) == 1);
    CHECK(pmw_exact(star, {0, 1, 2, 3}) == 1);

    const Graph p4 = path_graph(4);
    CHECK(pmw_exact(p4, {0, 1, 2, 3}) == 1);

    const Graph k4 = complete_graph(4);
    CHECK(pmw_exact(k4, {0, 1, 2, 3}) == 2);

    CHECK_THROWS_AS(pmw_exact(complete_graph(10), {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}),
                    CapExceeded);
    CHECK_THROWS_AS(pmw_exact(p4, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(pmw_exact(p4, {7}), PreconditionError);
}

TEST_CASE("pmw brute force against a from-scratch oracle on tiny graphs") {
    // independent re-derivation: for each ordering take the peak cut, minimize
    for (int n = 1; n <= 4; ++n) {
        for (const Graph& g : graphs_up_to_iso(n)) {
            for (unsigned vset = 0; vset < (1u << n); ++vset) {
                std::vector<int> v_list;
                for (int v = 0; v < n; ++v)
                    if (vset >> v & 1u) v_list.push_back(v);
                int naive = 0;
                if (!v_list.empty()) {
                    std::vector<int> perm = v_list;
                    naive = INT_MAX;
                    std::sort(perm.begin(), perm.end());
                    do {
                        int peak = 0;
                        for (std::size_t t = 1; t <= perm.size(); ++t) {
                            const std::vector<int> prefix(perm.begin(),
                                                          perm.begin() + static_cast<long>(t));
                            peak = std::max(peak, brute_max_matching(n, cut_edges(g, prefix)));
                        }
                        naive = std::min(naive, peak);
                    } while (std::next_permutation(perm.begin(), perm.end()));
                }
                CHECK(pmw_exact(g, v_list) == naive);
            }
        }
    }
}

TEST_CASE("witnessing matchings on a path") {
    const Graph p4 = path_graph(4);
    const std::vector<int> all = {0, 1, 2, 3};

    // interleaved ordering admits a supported matching of size 2 at split 2
    const std::vector<int> sv = {0, 2, 1, 3};
    const WitnessingMatching w = witnessing_matching_exact(p4, all, sv);
    CHECK(w.m.size() == 2);
    std::string why;
    CHECK_MESSAGE(is_witnessing(p4, all, sv, w, &why), why);

    // the straight ordering cannot do better than one
    const std::vector<int> straight = {0, 1, 2, 3};
    CHECK(witnessing_matching_exact(p4, all, straight).m.size() == 1);

    CHECK(min_witnessing_size_over_orders(p4, all) == 1);

    // sabotage: an edge inside the prefix is not supported
    WitnessingMatching bad;
    bad.split = 3;
    bad.m = {{0, 2}};
    CHECK(!is_witnessing(p4, all, sv, bad, &why));
    CHECK(!why.empty());
}

TEST_CASE("witness support may leave the vertex set") {
    // V = the two ends of a path; middle vertices stay outside
    const Graph p4 = path_graph(4);
    const std::vector<int> v = {0, 3};
    const std::vector<int> sv = {0, 3};
    const WitnessingMatching w = witnessing_matching_exact(p4, v, sv);
    // edges 0-1 and 2-3 both leave V and are disjoint
    CHECK(w.m.size() == 2);
    std::string why;
    CHECK_MESSAGE(is_witnessing(p4, v, sv, w, &why), why);
}

TEST_CASE("prefix conversion halves at worst") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 5);
        const Graph g = random_connected_graph_max_degree(n, n - 1, rng);
        std::vector<int> v_list;
        for (int v = 0; v < n; ++v)
            if (rng() % 3) v_list.push_back(v);
        if (v_list.empty()) v_list.push_back(0);
        std::vector<int> sv = v_list;
        std::shuffle(sv.begin(), sv.end(), rng);
        const WitnessingMatching w = witnessing_matching_exact(g, v_list, sv);
        std::string why;
        CHECK_MESSAGE(is_witnessing(g, v_list, sv, w, &why), why);
        const PrefixMatching pm = witness_to_prefix(w, g, v_list, sv);
        CHECK(is_matching(g, pm.m));
        CHECK(2 * pm.m.size() >= w.m.size());
        CHECK(pm.prefix_len >= 0);
        CHECK(pm.prefix_len <= static_cast<int>(sv.size()));
        // every yielded edge crosses the prefix boundary
        std::set<int> prefix(sv.begin(), sv.begin() + pm.prefix_len);
        for (const auto& [a, b] : pm.m)
            CHECK((prefix.count(a) > 0) != (prefix.count(b) > 0));
    }
}

TEST_CASE("role path matchings") {
    const ProductGraph p(TernaryTree(1), path_graph(2));
    // vertex (0,0) first part, (1,0) second part: the aligned edge 0-2 links them
    const RolePartition parts = RolePartition::from_sets(p.num_vertices(), {0}, {2});
    const Matching m = matching_from_role_path(p, 0, 1, {0}, parts);
    REQUIRE(m.size() == 1);
    CHECK(p.as_graph().has_edge(m[0].first, m[0].second));
    CHECK(parts(m[0].first) != parts(m[0].second));
    CHECK(parts(m[0].first) != Role::Outside);
    CHECK(parts(m[0].second) != Role::Outside);
}

TEST_CASE("goodpart matchings on small instances") {
    const ProductGraph p = build_gk_instance(4, 1); // pattern P2, 4 nodes, 8 vertices

    // one fully selected copy against the rest
    const Matching m1 = matching_goodpart1(p, {0, 1}, 1);
    CHECK(m1.size() >= 1);
    CHECK(is_matching(p.as_graph(), m1));

    // full occupancy split into two halves
    std::vector<int> v_all(static_cast<std::size_t>(p.num_vertices()));
    std::iota(v_all.begin(), v_all.end(), 0);
    const std::vector<int> v1 = {0, 2, 4, 6};
    const std::vector<int> v2 = {1, 3, 5, 7};
    const Matching m3 = matching_goodpart3(p, v_all, v1, v2, 1);
    CHECK(m3.size() >= 1);
    CHECK(is_matching(p.as_graph(), m3));
    const RolePartition parts = RolePartition::from_sets(p.num_vertices(), v1, v2);
    for (const auto& [a, b] : m3) {
        CHECK(parts(a) != Role::Outside);
        CHECK(parts(b) != Role::Outside);
        CHECK(parts(a) != parts(b));
    }

    // goodpart1 needs an unoccupied node
    CHECK_THROWS_AS(matching_goodpart1(p, v_all, 1), PreconditionError);
}

TEST_CASE("subtree sequences stop at the first lagging step") {
    const ProductGraph p = build_gk_instance(4, 2); // 13 nodes, 26 vertices
    std::vector<int> v_all(static_cast<std::size_t>(p.num_vertices()));
    std::iota(v_all.begin(), v_all.end(), 0);
    const SubtreeSequence seq = minimal_largest_subtree_sequence(p, v_all, 1);
    REQUIRE(!seq.steps.empty());
    CHECK(seq.steps.front().root == 0);
    for (std::size_t i = 1; i < seq.steps.size(); ++i) {
        CHECK(seq.steps[i].oc_size <= seq.steps[i - 1].oc_size);
        // each step roots at a child of the previous root
        const int parent = (seq.steps[i].root - 1) / 3;
        CHECK(parent == seq.steps[i - 1].root);
    }
    CHECK(seq.steps.front().oc_size - seq.steps.back().oc_size >= 1);
}

TEST_CASE("full occupancy witness") {
    for (const auto& [k, h] : std::vector<std::pair<int, int>>{{4, 1}, {4, 2}, {8, 1}}) {
        const ProductGraph p = build_gk_instance(k, h);
        const int pp = k / 4;
        std::vector<int> v_all(static_cast<std::size_t>(p.num_vertices()));
        std::iota(v_all.begin(), v_all.end(), 0);
        const WitnessingMatching w = perfpart_witness(p, v_all, v_all, pp);
        const int floor = pp * (tr(p.tree().num_nodes()) - tr(pp));
        CHECK(static_cast<int>(w.m.size()) >= floor);
        CHECK(p.num_vertices() - w.split >= pp * pp);
        CHECK(p.num_vertices() - (static_cast<int>(v_all.size()) - w.split) >= pp * pp);
        std::string why;
        CHECK_MESSAGE(is_witnessing(p.as_graph(), v_all, v_all, w, &why), why);
    }

    // a missing node breaks the hypothesis
    const ProductGraph p = build_gk_instance(4, 1);
    const std::vector<int> partial = {0, 1, 2, 3, 4, 5}; // node 3 empty
    CHECK_THROWS_AS(perfpart_witness(p, partial, partial, 1), PreconditionError);
}

TEST_CASE("partial occupancy witness") {
    const ProductGraph p = build_gk_instance(4, 2);
    std::vector<int> v_all(static_cast<std::size_t>(p.num_vertices()));
    std::iota(v_all.begin(), v_all.end(), 0);
    const WitnessingMatching w = mwmain_witness(p, v_all, v_all, 1);
    // x = tr(13) = 2, so the floor is 1 * (2 - 0) / 2 = 1
    CHECK(w.m.size() >= 1);
    std::string why;
    CHECK_MESSAGE(is_witnessing(p.as_graph(), v_all, v_all, w, &why), why);

    // fewer occupied nodes than p
    const ProductGraph p8 = build_gk_instance(8, 1);
    const std::vector<int> single = {0, 1};
    CHECK_THROWS_AS(mwmain_witness(p8, single, single, 2), PreconditionError);
}
