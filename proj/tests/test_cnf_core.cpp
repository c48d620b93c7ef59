#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "pmw/cnf.hpp"
#include "pmw/corpus.hpp"
#include "pmw/errors.hpp"
#include "pmw/graph.hpp"

using namespace pmw;

TEST_CASE("literal helpers") {
    CHECK(pos_lit(0) == 1);
    CHECK(neg_lit(0) == -1);
    CHECK(pos_lit(4) == 5);
    CHECK(lit_var(5) == 4);
    CHECK(lit_var(-5) == 4);
    CHECK(lit_positive(3));
    CHECK(!lit_positive(-3));
}

TEST_CASE("literal sets") {
    const LiteralSet s = make_literal_set({pos_lit(0), neg_lit(2), pos_lit(3)});
    CHECK(s.vars == 0b1101);
    CHECK(s.pos == 0b1001);
    const std::vector<int> lits = literals_of(s);
    CHECK(lits == std::vector<int>{1, -3, 4});
    const LiteralSet proj = project(s, 0b0101);
    CHECK(proj.vars == 0b0101);
    CHECK(proj.pos == 0b0001);
    CHECK_THROWS_AS(make_literal_set({1, -1}), PreconditionError);
    CHECK_THROWS_AS(make_literal_set({0}), PreconditionError);
}

TEST_CASE("model sets") {
    const ModelSet f = make_model_set(0b111, {5, 1, 5, 3});
    CHECK(f.models == std::vector<VarMask>{1, 3, 5}); // sorted, deduplicated
    CHECK_THROWS_AS(make_model_set(0b011, {4}), PreconditionError);

    const ModelSet proj = project_models(f, 0b011);
    CHECK(proj.models == std::vector<VarMask>{1, 3});

    const ModelSet res = restrict_models(f, make_literal_set({pos_lit(0)}));
    CHECK(res.vars == 0b110);
    CHECK(res.models == std::vector<VarMask>{0, 2, 4});

    const ModelSet arr = arrow(f, make_literal_set({pos_lit(2)}));
    CHECK(arr.vars == 0b111);
    CHECK(arr.models == std::vector<VarMask>{5});
}

TEST_CASE("edge formula on named graphs") {
    const Cnf f2 = phi_of_graph(path_graph(2));
    CHECK(f2.num_vars == 2);
    CHECK(f2.clauses.size() == 1);
    CHECK(count_models(f2) == 3);

    const Cnf f3 = phi_of_graph(path_graph(3));
    CHECK(count_models(f3) == 5);

    const Cnf tri = phi_of_graph(complete_graph(3));
    CHECK(count_models(tri) == 4);

    // vertex covers: every model hits every edge
    const ModelSet ms = model_set_of(f3);
    for (VarMask m : ms.models) CHECK(satisfies(f3, m));
    CHECK(std::is_sorted(ms.models.begin(), ms.models.end()));

    CHECK_THROWS_AS(phi_of_graph(Graph(2)), PreconditionError);
    Graph lonely(3);
    lonely.add_edge(0, 1);
    CHECK_THROWS_AS(phi_of_graph(lonely), PreconditionError);
}

TEST_CASE("tree instance formulas") {
    const PhiInstance small = build_phi_k(4, 0);
    CHECK(small.cnf.num_vars == 2);
    CHECK(small.cnf.clauses.size() == 1);

    const PhiInstance inst = build_phi_k(8, 1);
    CHECK(inst.cnf.num_vars == 16);
    // per copy a path on 4 vertices (3 clauses), plus 4 aligned clauses per tree edge
    CHECK(inst.cnf.clauses.size() == 24);
    CHECK(primal_graph(inst.cnf).edges() == inst.product.as_graph().edges());
    CHECK_THROWS_AS(build_phi_k(3, 1), PreconditionError);
    // k not divisible by four floors to the same pattern as the multiple below it
    CHECK(build_phi_k(6, 0).cnf.num_vars == 2);
}

TEST_CASE("counting caps") {
    const Cnf f = phi_of_graph(path_graph(5));
    CHECK_THROWS_AS(count_models(f, CountingConfig{4}), CapExceeded);
    CHECK_THROWS_AS(model_set_of(f, CountingConfig{4}), CapExceeded);
    CHECK(count_models(f, CountingConfig{5}) == 13);
}

TEST_CASE("positive restriction counting") {
    const Cnf f = phi_of_graph(path_graph(3));
    // center positive: both ends free
    CHECK(count_models_with_all_true(f, var_bit(1)) == 4);
    // both ends positive: center free
    CHECK(count_models_with_all_true(f, var_bit(0) | var_bit(2)) == 2);
    // agreement with the filtering definition
    const ModelSet ms = model_set_of(f);
    for (VarMask u = 0; u < 8; ++u) {
        mpz_class direct = 0;
        for (VarMask m : ms.models)
            if ((m & u) == u) ++direct;
        CHECK(count_models_with_all_true(f, u) == direct);
    }
}

TEST_CASE("formula restriction agrees with model restriction") {
    Rng rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 8);
        const Cnf f = random_satisfiable_cnf(n, 2 * n, 1, std::min(3, n), rng);
        const ModelSet ms = model_set_of(f);
        // restrict by a random consistent literal pair
        const int v = static_cast<int>(rng() % static_cast<unsigned>(n));
        const bool sign = rng() % 2;
        const LiteralSet s = make_literal_set({sign ? pos_lit(v) : neg_lit(v)});
        CHECK(restrict_models(f, s) == restrict_models(ms, s));

        const Cnf residue = restrict_cnf(f, s);
        CHECK(residue.num_vars == f.num_vars);
        const ModelSet via_residue = [&] {
            std::vector<VarMask> kept;
            for (VarMask m : restrict_models(ms, s).models) kept.push_back(m);
            return make_model_set(ms.vars & ~var_bit(v), std::move(kept));
        }();
        // the residue's models over the remaining variables match
        std::vector<VarMask> direct;
        for (VarMask m = 0; m < (VarMask{1} << n); ++m) {
            if (m & var_bit(v)) continue;
            const VarMask full = m | (sign ? var_bit(v) : 0);
            if (satisfies(f, full)) direct.push_back(m & ~var_bit(v));
        }
        std::sort(direct.begin(), direct.end());
        direct.erase(std::unique(direct.begin(), direct.end()), direct.end());
        std::vector<VarMask> residue_models;
        for (VarMask m = 0; m < (VarMask{1} << n); ++m)
            if (!(m & var_bit(v)) && satisfies(residue, m)) residue_models.push_back(m);
        CHECK(residue_models == direct);
        (void)via_residue;
    }
}

TEST_CASE("empty clause detection") {
    Cnf f;
    f.num_vars = 2;
    f.clauses = {{1, 2}};
    const Cnf dead = restrict_cnf(restrict_cnf(f, make_literal_set({-1})),
                                  make_literal_set({-2}));
    CHECK(has_empty_clause(dead));
    CHECK(!has_empty_clause(f));
}

TEST_CASE("dimacs round trip") {
    const PhiInstance inst = build_phi_k(4, 1);
    std::stringstream ss;
    write_dimacs(ss, inst.cnf);
    const Cnf back = read_dimacs(ss);
    CHECK(back == inst.cnf);

    std::stringstream bad("p cnf 2 1\n1 3 0\n");
    CHECK_THROWS(read_dimacs(bad)); // literal out of range

    std::stringstream truncated("p cnf 2 2\n1 2 0\n");
    CHECK_THROWS_AS(read_dimacs(truncated), IoError);
}

TEST_CASE("model writer format") {
    const ModelSet f = make_model_set(0b11, {0b01, 0b10});
    std::stringstream ss;
    write_models(ss, f);
    CHECK(ss.str() == "1 -2\n-1 2\n");
}

TEST_CASE("independent subsets under degree bounds") {
    const Graph star = star_graph(4); // center 0, leaves 1..4
    const std::vector<int> all = {0, 1, 2, 3, 4};
    const auto indep = independent_no_common_neighbor_subset(star, all, false);
    for (std::size_t i = 0; i < indep.size(); ++i)
        for (std::size_t j = i + 1; j < indep.size(); ++j)
            CHECK(!star.has_edge(indep[i], indep[j]));
    CHECK(indep.size() * (static_cast<std::size_t>(star.max_degree()) + 1) >= all.size());

    // leaves share the center, so the strict form keeps only one of them
    const auto strict = independent_no_common_neighbor_subset(star, {1, 2, 3, 4}, true);
    CHECK(strict.size() == 1);

    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(rng() % 12);
        const Graph g = random_connected_graph_max_degree(n, 5, rng);
        std::vector<int> u;
        for (int v = 0; v < n; ++v)
            if (rng() % 2) u.push_back(v);
        if (u.empty()) u.push_back(0);
        const auto s = independent_no_common_neighbor_subset(g, u, true);
        const int d = g.max_degree();
        CHECK(s.size() * static_cast<std::size_t>(d * d + 1) >= u.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j) {
                CHECK(!g.has_edge(s[i], s[j]));
                const auto mi = g.neighbor_mask(s[i]);
                const auto mj = g.neighbor_mask(s[j]);
                CHECK((mi & mj) == 0);
            }
    }
}

TEST_CASE("random satisfiable formulas stay satisfiable") {
    Rng rng(29);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const Cnf f = random_satisfiable_cnf(n, 3 * n, 1, std::min(3, n), rng);
        CHECK(f.num_vars == n);
        for (const auto& cl : f.clauses) {
            CHECK(!cl.empty());
            CHECK(cl.size() <= 3);
        }
        CHECK(count_models(f) >= 1);
    }
}

TEST_CASE("uniform model thinning") {
    Rng rng(31);
    const Cnf f = phi_of_graph(path_graph(5));
    const ModelSet ms = model_set_of(f); // 13 models
    const ModelSet half = random_submodel_set(ms, 0.5, rng);
    CHECK(half.models.size() == 7); // round(6.5) = 7
    for (VarMask m : half.models)
        CHECK(std::binary_search(ms.models.begin(), ms.models.end(), m));
    const ModelSet tiny = random_submodel_set(ms, 0.01, rng);
    CHECK(tiny.models.size() == 1);
    CHECK_THROWS_AS(random_submodel_set(ms, 0.0, rng), PreconditionError);
}
