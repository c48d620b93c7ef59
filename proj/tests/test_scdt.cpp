#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include <gmpxx.h>

#include "pmw/cnf.hpp"
#include "pmw/corpus.hpp"
#include "pmw/errors.hpp"
#include "pmw/graph.hpp"
#include "pmw/scdt.hpp"

using namespace pmw;

TEST_CASE("trie over the single-edge formula") {
    const Graph g = path_graph(2);
    const Cnf f = phi_of_graph(g);
    const Scdt t = build_scdt(f, {0, 1});

    // branch keys sort the negative side first
    CHECK(t.models == std::vector<VarMask>{2, 1, 3});
    CHECK(t.leaves().size() == 3);

    REQUIRE(t.nodes[0].out.size() == 2);
    const ScdtEdge& neg = t.nodes[0].out[0];
    const ScdtEdge& pos = t.nodes[0].out[1];
    CHECK(!neg.positive);
    CHECK(pos.positive);
    CHECK(neg.weight == mpq_class(1, 3));
    CHECK(pos.weight == mpq_class(2, 3));

    // under the negative branch the second variable is forced positive
    const ScdtNode& forced = t.nodes[static_cast<std::size_t>(neg.child)];
    REQUIRE(forced.out.size() == 1);
    CHECK(forced.out[0].positive);
    CHECK(forced.out[0].weight == 1);

    for (int leaf : t.leaves()) CHECK(path_weight(t, leaf) == mpq_class(1, 3));

    std::vector<VarMask> leaf_models;
    for (int leaf : t.leaves()) leaf_models.push_back(t.leaf_model(leaf));
    std::sort(leaf_models.begin(), leaf_models.end());
    CHECK(leaf_models == std::vector<VarMask>{1, 2, 3});
}

TEST_CASE("build preconditions") {
    const Cnf f = phi_of_graph(path_graph(2));
    CHECK_THROWS_AS(build_scdt(f, {0}), PreconditionError);
    CHECK_THROWS_AS(build_scdt(f, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(build_scdt(f, {0, 2}), PreconditionError);

    Cnf unsat;
    unsat.num_vars = 1;
    unsat.clauses = {{1}, {-1}};
    CHECK_THROWS_AS(build_scdt(unsat, {0}), PreconditionError);

    const Cnf wide = phi_of_graph(path_graph(4));
    CHECK_THROWS_AS(build_scdt(wide, {0, 1, 2, 3}, CountingConfig{2}), CapExceeded);
}

TEST_CASE("path families at the root are marginals") {
    const Cnf f = phi_of_graph(path_graph(2));
    const Scdt t = build_scdt(f, {0, 1});
    CHECK(weight_of_path_family(t, 0, var_bit(0)) == mpq_class(2, 3));
    CHECK(weight_of_path_family(t, 0, var_bit(1)) == mpq_class(2, 3));
    CHECK(weight_of_path_family(t, 0, var_bit(0) | var_bit(1)) == mpq_class(1, 3));
    CHECK(weight_of_path_family(t, 0, 0) == 1);

    // a set meeting the node's fixed assignment weighs nothing
    const int pos_child = t.nodes[0].out[1].child;
    CHECK(weight_of_path_family(t, pos_child, var_bit(0)) == 0);

    CHECK_THROWS_AS(weight_of_path_family(t, 99, 0), PreconditionError);
    CHECK_THROWS_AS(weight_of_path_family(t, 0, var_bit(63)), PreconditionError);
}

TEST_CASE("recursive and direct family weights agree") {
    Rng rng(41);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 7);
        const Cnf f = random_satisfiable_cnf(n, 2 * n, 1, std::min(3, n), rng);
        const Scdt t = build_scdt(f, random_order(n, rng));
        for (int probe = 0; probe < 6; ++probe) {
            const VarMask s = std::uniform_int_distribution<VarMask>(
                0, (VarMask{1} << n) - 1)(rng);
            const auto all = family_weights_all_nodes(t, s);
            const int node = static_cast<int>(rng() % t.nodes.size());
            const mpq_class rec = weight_of_path_family(t, node, s);
            CHECK(rec == weight_of_path_family_direct(t, node, s));
            CHECK(rec == all[static_cast<std::size_t>(node)]);
        }
    }
}

TEST_CASE("forcing machinery") {
    const Graph g = path_graph(3);
    // center 1 forced once an end is negative
    CHECK(forced_to_one(g, 1, make_literal_set({neg_lit(0)})));
    CHECK(!forced_to_one(g, 1, make_literal_set({pos_lit(0)})));
    CHECK(!forced_to_one(g, 1, LiteralSet{}));
    // an assigned variable is never forced
    CHECK(!forced_to_one(g, 1, make_literal_set({pos_lit(1), neg_lit(0)})));

    CHECK(live_neighbors(g, 1, LiteralSet{}) == std::vector<int>{0, 2});
    // a neighbor forced by someone else is not live
    const LiteralSet a = make_literal_set({neg_lit(0)});
    CHECK(live_neighbors(g, 2, a) == std::vector<int>{}); // 1 is forced by 0
    CHECK(live_neighbors(g, 0, make_literal_set({pos_lit(1)})) == std::vector<int>{});
}

TEST_CASE("damping constants and alpha bounds") {
    CHECK(damping_constant(0) == mpq_class(1, 2));
    CHECK(damping_constant(1) == mpq_class(7, 8));
    CHECK(damping_constant(2) == mpq_class(31, 32));
    CHECK_THROWS_AS(damping_constant(-1), PreconditionError);

    const Graph g = path_graph(3);
    CHECK(alpha_bound(g, var_bit(0) | var_bit(2), LiteralSet{}) == mpq_class(49, 64));
    CHECK(alpha_bound(g, 0, LiteralSet{}) == 1);
}

TEST_CASE("path family bound on the single-edge formula") {
    const Graph g = path_graph(2);
    const Scdt t = build_scdt(phi_of_graph(g), {0, 1});
    const MaintreeCheck chk = verify_maintree(t, g, 0, var_bit(1));
    CHECK(chk.lhs == mpq_class(2, 3));
    CHECK(chk.rhs == mpq_class(7, 8));
    CHECK(chk.pass);

    // the empty set is admissible and trivially tight
    const MaintreeCheck empty = verify_maintree(t, g, 0, 0);
    CHECK(empty.lhs == 1);
    CHECK(empty.rhs == 1);
    CHECK(empty.pass);

    // adjacent members violate the hypothesis
    const Graph p3 = path_graph(3);
    const Scdt t3 = build_scdt(phi_of_graph(p3), {0, 1, 2});
    CHECK_THROWS_AS(verify_maintree(t3, p3, 0, var_bit(0) | var_bit(1)), PreconditionError);
    // common-neighbor members violate it too, unless lax
    CHECK_THROWS_AS(verify_maintree(t3, p3, 0, var_bit(0) | var_bit(2)), PreconditionError);
    CHECK_NOTHROW(verify_maintree(t3, p3, 0, var_bit(0) | var_bit(2), true));
    // the tree must come from this graph's formula
    CHECK_THROWS_AS(verify_maintree(t, p3, 0, 0), PreconditionError);
}

TEST_CASE("sweeps pass on small instances") {
    Rng rng(43);
    for (const Graph& g : {path_graph(3), path_graph(4), cycle_graph(4), star_graph(3)}) {
        const Cnf f = phi_of_graph(g);
        for (int trial = 0; trial < 3; ++trial) {
            const Scdt t = build_scdt(f, random_order(g.num_vertices(), rng));
            const VerifyReport maintree = verify_maintree_sweep(t, g, 3);
            CHECK(maintree.checked > 0);
            CHECK(maintree.failed == 0);
            const VerifyReport ranges = verify_largeportion_treeweights(t, g);
            CHECK(ranges.checked > 0);
            CHECK(ranges.failed == 0);
        }
    }
}

TEST_CASE("csv report writer") {
    const Graph g = path_graph(3);
    const Scdt t = build_scdt(phi_of_graph(g), {0, 1, 2});
    const VerifyReport vr = verify_maintree_sweep(t, g, 2, false, true);
    std::stringstream ss;
    write_report_csv(ss, vr);
    std::string first;
    std::getline(ss, first);
    CHECK(first == "node,item,lhs,rhs,pass");
    CHECK(vr.rows.size() == static_cast<std::size_t>(vr.checked));
}

TEST_CASE("aggregate restriction bound on a path") {
    const Graph g = path_graph(3);
    const ManyvarsReport rep = verify_manyvars1(g, {0, 2});
    CHECK(rep.n == 3);
    CHECK(rep.d == 2);
    CHECK(rep.phi_count == 5);
    CHECK(rep.arrow_u_count == 2);
    CHECK(rep.s_set.size() == 2); // 0 and 2 are independent
    CHECK(rep.arrow_s_count == 2);
    CHECK(rep.pass);
    CHECK(rep.route_pass);
    CHECK(rep.b_corrected > 0);

    // the strict variant drops one of the two ends: they share the center
    const ManyvarsReport strict = verify_manyvars1(g, {0, 2}, true);
    CHECK(strict.s_set.size() == 1);
    CHECK(strict.arrow_s_count == 3);
    CHECK(strict.pass);
    CHECK(strict.route_pass);

    CHECK_THROWS_AS(verify_manyvars1(g, {0, 0}), PreconditionError);
    CHECK_THROWS_AS(verify_manyvars1(g, {5}), PreconditionError);
    CHECK_THROWS_AS(verify_manyvars1(Graph(3), {0}), PreconditionError);
}

TEST_CASE("dump is deterministic and complete") {
    const Cnf f = phi_of_graph(path_graph(2));
    const Scdt t = build_scdt(f, {0, 1});
    std::stringstream a, b;
    dump_scdt(a, t);
    dump_scdt(b, t);
    CHECK(a.str() == b.str());
    CHECK(a.str().find("1/3") != std::string::npos);
    CHECK(a.str().find("2/3") != std::string::npos);
    std::size_t edge_count = 0;
    for (const auto& node : t.nodes) edge_count += node.out.size();
    std::size_t lines = 0;
    std::string line;
    while (std::getline(a, line))
        if (!line.empty()) ++lines;
    CHECK(lines == edge_count);
}
