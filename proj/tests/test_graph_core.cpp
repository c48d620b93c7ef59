#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <vector>

#include "pmw/corpus.hpp"
#include "pmw/errors.hpp"
#include "pmw/graph.hpp"
#include "pmw/product_graph.hpp"
#include "pmw/ternary_tree.hpp"
#include "pmw/tree_decomposition.hpp"

using namespace pmw;

TEST_CASE("graph basics") {
    Graph g(4);
    CHECK(g.num_vertices() == 4);
    CHECK(g.num_edges() == 0);
    g.add_edge(0, 1);
    g.add_edge(1, 0); // idempotent
    g.add_edge(2, 1);
    CHECK(g.num_edges() == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 2));
    CHECK(g.degree(1) == 2);
    CHECK(g.max_degree() == 2);
    CHECK(g.has_isolated_vertex()); // vertex 3
    CHECK(!g.is_connected());
    g.add_edge(2, 3);
    CHECK(g.is_connected());
    CHECK(!g.has_isolated_vertex());

    const auto es = g.edges();
    const std::vector<std::pair<int, int>> want = {{0, 1}, {1, 2}, {2, 3}};
    CHECK(es == want);
    CHECK(g.neighbor_mask(1) == 0b101);
}

TEST_CASE("graph constructors") {
    CHECK(path_graph(1).num_edges() == 0);
    CHECK(path_graph(5).num_edges() == 4);
    CHECK(cycle_graph(5).num_edges() == 5);
    CHECK(complete_graph(5).num_edges() == 10);
    CHECK(star_graph(4).num_vertices() == 5);
    CHECK(star_graph(4).num_edges() == 4);
    CHECK(star_graph(4).degree(0) == 4);
    CHECK(path_graph(5).is_connected());
    CHECK(Graph().is_connected()); // vacuous
}

TEST_CASE("edge list round trip") {
    const Graph g = cycle_graph(6);
    std::stringstream ss;
    write_edge_list(g, ss);
    const Graph back = read_edge_list(ss);
    CHECK(back.num_vertices() == 6);
    CHECK(back.edges() == g.edges());
}

TEST_CASE("ternary counts and tr") {
    CHECK(ternary_node_count(0) == 1);
    CHECK(ternary_node_count(1) == 4);
    CHECK(ternary_node_count(2) == 13);
    CHECK(ternary_node_count(3) == 40);
    CHECK(tr(1) == 0);
    CHECK(tr(3) == 0);
    CHECK(tr(4) == 1);
    CHECK(tr(12) == 1);
    CHECK(tr(13) == 2);
    CHECK(tr(39) == 2);
    CHECK(tr(40) == 3);
}

TEST_CASE("ternary tree layout") {
    const TernaryTree t(2);
    CHECK(t.num_nodes() == 13);
    CHECK(t.parent(0) == -1);
    CHECK(t.child(0, 2) == 3);
    CHECK(t.parent(7) == 2);
    CHECK(t.depth(0) == 0);
    CHECK(t.depth(3) == 1);
    CHECK(t.depth(12) == 2);
    CHECK(t.subtree_height(3) == 1);
    CHECK(t.is_leaf(12));
    CHECK(!t.is_leaf(3));

    const std::vector<int> sub = t.subtree_nodes(2);
    const std::vector<int> want = {2, 7, 8, 9};
    CHECK(sub == want);

    // path through the root between two leaves of different children
    const std::vector<int> pth = t.path(4, 12);
    const std::vector<int> want_path = {4, 1, 0, 3, 12};
    CHECK(pth == want_path);
    CHECK(t.edges().size() == 12);
}

TEST_CASE("product graph structure") {
    const ProductGraph p(TernaryTree(1), path_graph(2));
    CHECK(p.num_vertices() == 8);
    CHECK(p.vertex_id(2, 1) == 5);
    CHECK(p.tree_node(5) == 2);
    CHECK(p.pattern_index(5) == 1);
    const std::vector<int> copy2 = {4, 5};
    CHECK(p.copy_vertices(2) == copy2);

    const Graph& g = p.as_graph();
    // each copy has the pattern edge; each tree edge contributes |V(H)| edges
    CHECK(g.num_edges() == 4 * 1 + 3 * 2);
    CHECK(g.has_edge(0, 1));     // pattern edge in the root copy
    CHECK(g.has_edge(0, 2));     // aligned edge root -> child 1
    CHECK(!g.has_edge(0, 3));    // indices differ
    CHECK(g.is_connected());
}

TEST_CASE("gk instance parameters") {
    const ProductGraph p = build_gk_instance(8, 1);
    CHECK(p.pattern_size() == 4);
    CHECK(p.tree().num_nodes() == 4);
    CHECK(p.num_vertices() == 16);
    CHECK(p.as_graph().max_degree() <= 6);
    CHECK(p.as_graph().is_connected());
    CHECK_THROWS_AS(build_gk_instance(3, 1), PreconditionError);
    CHECK_THROWS_AS(build_gk_instance(8, -1), PreconditionError);
}

TEST_CASE("occupancy") {
    const ProductGraph p(TernaryTree(1), path_graph(2));
    // node 0 fully, node 2 half
    const std::vector<int> v = {0, 1, 4};
    const Occupancy oc = occupied_set(p, v);
    const std::vector<int> nodes = {0, 2};
    CHECK(oc.nodes == nodes);
    CHECK(oc.is_complete(0));
    CHECK(!oc.is_complete(1));

    const std::vector<int> region = {2, 3};
    const Occupancy reg = occupied_set_in_region(p, region, v);
    CHECK(reg.nodes == std::vector<int>{2});
}

TEST_CASE("role partitions") {
    const ProductGraph p(TernaryTree(1), path_graph(2));
    const RolePartition parts = RolePartition::from_sets(8, {0, 1}, {4, 5, 6});
    CHECK(parts(0) == Role::First);
    CHECK(parts(5) == Role::Second);
    CHECK(parts(7) == Role::Outside);
    CHECK(parts.members(Role::Second) == std::vector<int>{4, 5, 6});

    const std::vector<int> region = {0, 1, 2, 3};
    const std::vector<int> homo = homogeneous_nodes(p, region, parts);
    // node 3 is mixed Second/Outside; uniform copies qualify, outside included
    CHECK(homo == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(RolePartition::from_sets(8, {0, 1}, {1, 2}), PreconditionError);
}

TEST_CASE("gk tree decomposition") {
    for (int height = 0; height <= 2; ++height) {
        const ProductGraph p = build_gk_instance(4, height);
        const TreeDecomposition td = gk_tree_decomposition(p);
        // the single-bag height-0 instance has no parent copy to pair with
        const int want = height == 0 ? p.pattern_size() - 1 : 2 * p.pattern_size() - 1;
        CHECK(td.width() == want);
        const TdCheck chk = verify_tree_decomposition(p.as_graph(), td);
        CHECK_MESSAGE(chk.ok, chk.reason);
    }

    const ProductGraph p = build_gk_instance(8, 1);
    const TreeDecomposition td = gk_tree_decomposition(p);
    std::stringstream ss;
    write_td(td, p.num_vertices(), ss);
    const TreeDecomposition back = read_td(ss);
    CHECK(back.bags == td.bags);
    CHECK(back.edges == td.edges);
    CHECK(verify_tree_decomposition(p.as_graph(), back).ok);
}

TEST_CASE("tree decomposition checker catches defects") {
    const Graph g = path_graph(3);
    TreeDecomposition td;
    td.bags = {{0, 1}, {2}}; // edge 1-2 uncovered
    td.edges = {{0, 1}};
    CHECK(!verify_tree_decomposition(g, td).ok);

    td.bags = {{0, 1}, {1, 2}};
    CHECK(verify_tree_decomposition(g, td).ok);

    // vertex 1's bags disconnected
    td.bags = {{0, 1}, {0, 2}, {1, 2}};
    td.edges = {{0, 1}, {1, 2}};
    CHECK(!verify_tree_decomposition(g, td).ok);
}

TEST_CASE("canonical code is an isomorphism invariant") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 6);
        const Graph g = random_graph_max_degree(n, n - 1, rng);
        const std::vector<int> perm = random_order(n, rng);
        Graph relabeled(n);
        for (const auto& [u, v] : g.edges()) relabeled.add_edge(perm[u], perm[v]);
        CHECK(canonical_code(g) == canonical_code(relabeled));
    }
    // different classes give different codes
    CHECK(canonical_code(path_graph(4)) != canonical_code(star_graph(3)));
    CHECK(canonical_code(cycle_graph(5)) != canonical_code(path_graph(5)));
}

TEST_CASE("graph census sizes") {
    const std::vector<std::size_t> all_counts = {1, 2, 4, 11, 34, 156, 1044};
    const std::vector<std::size_t> connected_counts = {1, 1, 2, 6, 21, 112, 853};
    for (int n = 1; n <= 7; ++n) {
        const auto all = graphs_up_to_iso(n);
        CHECK(all.size() == all_counts[static_cast<std::size_t>(n - 1)]);
        CHECK(connected_graphs_up_to_iso(n).size() ==
              connected_counts[static_cast<std::size_t>(n - 1)]);
        // codes strictly increasing: distinct classes, deterministic order
        for (std::size_t i = 1; i < all.size(); ++i)
            CHECK(canonical_code(all[i - 1]) < canonical_code(all[i]));
    }
    CHECK(graphs_up_to_iso(8).size() == 12346);
}

TEST_CASE("random graph generators respect their contracts") {
    Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 19);
        const Graph g = random_connected_graph_max_degree(n, 7, rng);
        CHECK(g.num_vertices() == n);
        CHECK(g.is_connected());
        CHECK(g.max_degree() <= 7);

        const Graph h = random_graph_max_degree(n, 3, rng);
        CHECK(h.max_degree() <= 3);
    }
    CHECK_THROWS_AS(random_connected_graph_max_degree(5, 1, rng), PreconditionError);
}
