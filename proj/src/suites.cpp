#include "pmw/suites.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <climits>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pmw/cnf.hpp"
#include "pmw/corpus.hpp"
#include "pmw/errors.hpp"
#include "pmw/graph.hpp"
#include "pmw/matching_width.hpp"
#include "pmw/nrobp.hpp"
#include "pmw/product_graph.hpp"
#include "pmw/scdt.hpp"
#include "pmw/ternary_tree.hpp"

namespace pmw {
namespace {

struct Tally {
    long long checked = 0;
    long long failed = 0;
    std::vector<std::string> first_failures;

    void expect(bool ok, const std::string& what) {
        ++checked;
        if (!ok) {
            ++failed;
            if (first_failures.size() < 12) first_failures.push_back(what);
        }
    }

    void absorb(const VerifyReport& vr, const std::string& label) {
        checked += vr.checked;
        failed += vr.failed;
        if (vr.failed > 0 && first_failures.size() < 12) {
            std::string what = label;
            if (!vr.rows.empty()) what += ": " + vr.rows.front().item;
            first_failures.push_back(what);
        }
    }
};

void fold(SuiteReport& r, const std::string& name, const Tally& t, const std::string& extra = {}) {
    r.checked += t.checked;
    r.failed += t.failed;
    SuiteCheck c;
    c.name = name;
    c.pass = t.failed == 0;
    c.detail = std::to_string(t.checked) + " checks";
    if (t.failed > 0)
        c.detail += ", " + std::to_string(t.failed) + " failed; first: " + t.first_failures.front();
    if (!extra.empty()) c.detail += "; " + extra;
    r.rows.push_back(std::move(c));
}

std::string fmt_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

int rand_int(Rng& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<int> mask_bits(VarMask m) {
    std::vector<int> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

// Exhaustive connected-graph corpus behind the counting suites. Starts at two
// vertices: the edge formula has no clause for an isolated vertex.
const std::vector<Graph>& connected_corpus() {
    static const std::vector<Graph> graphs = [] {
        std::vector<Graph> out;
        for (int n = 2; n <= 7; ++n) {
            std::vector<Graph> level = connected_graphs_up_to_iso(n);
            out.insert(out.end(), std::make_move_iterator(level.begin()),
                       std::make_move_iterator(level.end()));
        }
        return out;
    }();
    return graphs;
}

const std::vector<Graph>& iso_level(int n) {
    static std::array<std::vector<Graph>, 9> levels;
    if (levels[n].empty()) levels[n] = graphs_up_to_iso(n);
    return levels[n];
}

// Identity, reversed identity, then random orders.
std::vector<std::vector<int>> instance_orders(int n, int count, Rng& rng) {
    std::vector<std::vector<int>> orders;
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    orders.push_back(base);
    if (count > 1) {
        std::reverse(base.begin(), base.end());
        orders.push_back(base);
    }
    while (static_cast<int>(orders.size()) < count) orders.push_back(random_order(n, rng));
    return orders;
}

void check_exact_counts(const Scdt& t, Tally& tally, std::size_t* nodes_seen) {
    const mpq_class unit(1, static_cast<unsigned long>(t.models.size()));
    for (int leaf : t.leaves())
        tally.expect(path_weight(t, leaf) == unit, "leaf path weight differs from 1/|F|");
    for (std::size_t u = 0; u < t.nodes.size(); ++u) {
        if (t.is_leaf(static_cast<int>(u))) continue;
        mpq_class sum;
        for (const ScdtEdge& e : t.nodes[u].out) sum += e.weight;
        tally.expect(sum == 1, "out-weight sum differs from 1");
    }
    if (nodes_seen) *nodes_seen += t.nodes.size();
}

// Exact maximum matching on vertex masks, memoized per edge set via epoch
// stamps so switching edge sets costs O(1). Independent of matching.cpp.
struct TinyMatcher {
    int n = 0;
    std::array<unsigned, 12> adj{};
    std::vector<std::uint32_t> stamp;
    std::vector<std::uint8_t> val;
    std::uint32_t epoch = 0;

    void resize(int nn) {
        n = nn;
        stamp.assign(std::size_t{1} << nn, 0);
        val.assign(std::size_t{1} << nn, 0);
        epoch = 0;
        adj.fill(0);
    }

    void clear_edges() {
        ++epoch;
        adj.fill(0);
    }

    void add_edge(int a, int b) {
        adj[static_cast<std::size_t>(a)] |= 1u << b;
        adj[static_cast<std::size_t>(b)] |= 1u << a;
    }

    // The first vertex with a live neighbor is either unmatched or matched to
    // one of them; both branches recurse on smaller masks.
    int solve(unsigned mask) {
        if (stamp[mask] == epoch) return val[mask];
        int v = -1;
        for (unsigned rem = mask; rem; rem &= rem - 1) {
            const int c = std::countr_zero(rem);
            if (adj[static_cast<std::size_t>(c)] & mask) {
                v = c;
                break;
            }
        }
        int best = 0;
        if (v >= 0) {
            const unsigned without = mask & ~(1u << v);
            best = solve(without);
            for (unsigned cand = adj[static_cast<std::size_t>(v)] & mask; cand; cand &= cand - 1) {
                const int u = std::countr_zero(cand);
                best = std::max(best, 1 + solve(without & ~(1u << u)));
            }
        }
        stamp[mask] = epoch;
        val[mask] = static_cast<std::uint8_t>(best);
        return best;
    }
};

// Definition-level width oracle: f(S) = max(cut(S), min over single removals),
// filled in subset order so every strict subset is final when read.
std::vector<int> pmw_oracle_table(const Graph& g, TinyMatcher& tm) {
    const int n = g.num_vertices();
    const std::size_t full = std::size_t{1} << n;
    const unsigned all = static_cast<unsigned>(full - 1);
    const auto es = g.edges();
    std::vector<int> f(full, 0);
    for (std::size_t s = 1; s < full; ++s) {
        tm.clear_edges();
        for (const auto& [a, b] : es)
            if (((s >> a) & 1u) != ((s >> b) & 1u)) tm.add_edge(a, b);
        const int cut = tm.solve(all);
        int inner = INT_MAX;
        for (unsigned rem = static_cast<unsigned>(s); rem; rem &= rem - 1)
            inner = std::min(inner, f[s & ~(std::size_t{1} << std::countr_zero(rem))]);
        f[s] = std::max(cut, inner);
    }
    return f;
}

// w(S) = best matching over edges crossing the S / V\S split inside V or
// leaving V entirely; one value per subset of vset.
void fill_witness_values(const Graph& g, const std::vector<MatchEdge>& es, unsigned vset,
                         TinyMatcher& tm, std::vector<int>& w) {
    const unsigned all = (1u << g.num_vertices()) - 1;
    unsigned s = vset;
    while (true) {
        tm.clear_edges();
        for (const auto& [a, b] : es) {
            const bool ina = (vset >> a) & 1u;
            const bool inb = (vset >> b) & 1u;
            if (ina && inb) {
                if (((s >> a) & 1u) != ((s >> b) & 1u)) tm.add_edge(a, b);
            } else if (ina != inb) {
                tm.add_edge(a, b);
            }
        }
        w[s] = tm.solve(all);
        if (s == 0) break;
        s = (s - 1) & vset;
    }
}

// Minimum over orderings of the peak split value: the prefixes of an ordering
// form a chain, so the same inside-out lattice recurrence applies to w.
int witness_floor_from_values(unsigned vset, const std::vector<int>& w, std::vector<int>& f) {
    unsigned s = 0;
    while (true) {
        int inner = INT_MAX;
        for (unsigned rem = s; rem; rem &= rem - 1)
            inner = std::min(inner, f[s & ~(1u << std::countr_zero(rem))]);
        f[s] = std::max(w[s], inner == INT_MAX ? 0 : inner);
        if (s == vset) break;
        s = (s - vset) & vset;
    }
    return f[vset];
}

// Random vertex subset of a product graph touching at least min_occupied
// tree nodes.
std::vector<int> random_occupying_subset(const ProductGraph& p, int min_occupied, Rng& rng) {
    const int nodes = static_cast<int>(p.tree().num_nodes());
    const int psz = p.pattern_size();
    std::vector<char> occupied(static_cast<std::size_t>(nodes), 0);
    std::vector<int> out;
    const double density = std::uniform_real_distribution<double>(0.15, 0.85)(rng);
    for (int v = 0; v < p.num_vertices(); ++v) {
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < density) {
            out.push_back(v);
            occupied[static_cast<std::size_t>(p.tree_node(v))] = 1;
        }
    }
    std::vector<int> empty_nodes;
    for (int t = 0; t < nodes; ++t)
        if (!occupied[static_cast<std::size_t>(t)]) empty_nodes.push_back(t);
    std::shuffle(empty_nodes.begin(), empty_nodes.end(), rng);
    int have = nodes - static_cast<int>(empty_nodes.size());
    for (int t : empty_nodes) {
        if (have >= min_occupied) break;
        out.push_back(p.vertex_id(t, rand_int(rng, 0, psz - 1)));
        ++have;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Random subset with every tree node occupied.
std::vector<int> random_full_occupancy_subset(const ProductGraph& p, Rng& rng) {
    std::vector<int> out;
    for (int t = 0; t < static_cast<int>(p.tree().num_nodes()); ++t) {
        bool any = false;
        for (int i = 0; i < p.pattern_size(); ++i) {
            if (rand_int(rng, 0, 1)) {
                out.push_back(p.vertex_id(t, i));
                any = true;
            }
        }
        if (!any) out.push_back(p.vertex_id(t, rand_int(rng, 0, p.pattern_size() - 1)));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Random matchings across one program vertex, judged against the through-path
// models themselves.
void fixed_set_cases(const NrobpAnalysis& a, const std::vector<std::vector<int>>& paths,
                     Rng& rng, Tally& t, int* cases_done) {
    std::vector<int> mids;
    for (int v = 0; v < a.num_nodes(); ++v)
        if (a.before_vars(v) != 0 && a.after_vars(v) != 0) mids.push_back(v);
    if (mids.empty()) return;
    for (int c = 0; c < 3; ++c) {
        const int u = mids[static_cast<std::size_t>(rand_int(rng, 0, static_cast<int>(mids.size()) - 1))];
        std::vector<VarMask> through;
        for (const auto& path : paths) {
            const auto verts = a.path_vertices(path);
            if (std::find(verts.begin(), verts.end(), u) != verts.end())
                through.push_back(a.path_model(path));
        }
        t.expect(!through.empty(), "program vertex missed by every source-sink path");
        if (through.empty()) continue;

        std::vector<int> before = mask_bits(a.before_vars(u));
        std::vector<int> after = mask_bits(a.after_vars(u));
        std::shuffle(before.begin(), before.end(), rng);
        std::shuffle(after.begin(), after.end(), rng);
        const int cap = static_cast<int>(std::min({before.size(), after.size(), std::size_t{2}}));
        const int msize = rand_int(rng, 0, cap);
        Matching m;
        for (int j = 0; j < msize; ++j) m.emplace_back(before[j], after[j]);

        bool expect_throw = false;
        for (const auto& [x, y] : m) {
            bool x_droppable = false, y_droppable = false;
            for (VarMask mm : through) {
                if (!(mm & var_bit(x))) x_droppable = true;
                if (!(mm & var_bit(y))) y_droppable = true;
            }
            if (x_droppable && y_droppable) expect_throw = true;
        }

        bool threw = false;
        std::vector<int> picked;
        try {
            picked = fixed_set(a, u, m);
        } catch (const PreconditionError&) {
            threw = true;
        }
        t.expect(threw == expect_throw, "fixed-set refusal disagrees with the extensional test");
        if (!threw) {
            VarMask common = ~VarMask{0};
            for (VarMask mm : through) common &= mm;
            bool contained = true;
            for (int x : picked) contained = contained && ((common >> x) & 1);
            t.expect(contained, "fixed-set member not positive on some through-path");
            t.expect(picked.size() == m.size(), "fixed set size differs from the matching size");
        }
        ++*cases_done;
    }
}

const char* flag(bool b) { return b ? "1" : "0"; }

} // namespace

SuiteReport run_scdt_counting_suite(const SuiteConfig& cfg) {
    SuiteReport r;
    r.suite = "scdt-counting";
    r.csv.push_back("instance,vars,models,orders,nodes");
    Rng rng(cfg.seed);
    const CountingConfig ccfg{cfg.var_cap};

    Tally counts, ranges;
    int idx = 0;
    for (const Graph& g : connected_corpus()) {
        const Cnf f = phi_of_graph(g);
        const auto orders = instance_orders(g.num_vertices(), cfg.orders_per_instance, rng);
        std::size_t nodes = 0, model_count = 0;
        for (const auto& ord : orders) {
            const Scdt t = build_scdt(f, ord, ccfg);
            model_count = t.models.size();
            check_exact_counts(t, counts, &nodes);
            ranges.absorb(verify_largeportion_treeweights(t, g), "edge-weight range");
        }
        r.csv.push_back("graph" + std::to_string(idx) + ',' + std::to_string(f.num_vars) + ',' +
                        std::to_string(model_count) + ',' + std::to_string(orders.size()) + ',' +
                        std::to_string(nodes));
        ++idx;
    }
    fold(r, "edge-formula corpus: exact leaf weights and unit sums", counts);
    fold(r, "edge-formula corpus: edge-weight ranges and forced shape", ranges);

    Tally random_counts;
    for (int i = 0; i < cfg.random_formulas; ++i) {
        const int n = rand_int(rng, 1, 12);
        const int m = rand_int(rng, 0, 3 * n);
        const Cnf f = random_satisfiable_cnf(n, m, 1, std::min(3, n), rng);
        const auto orders = instance_orders(n, cfg.orders_per_instance, rng);
        std::size_t nodes = 0, model_count = 0;
        for (const auto& ord : orders) {
            const Scdt t = build_scdt(f, ord, ccfg);
            model_count = t.models.size();
            check_exact_counts(t, random_counts, &nodes);
        }
        r.csv.push_back("random" + std::to_string(i) + ',' + std::to_string(n) + ',' +
                        std::to_string(model_count) + ',' + std::to_string(orders.size()) + ',' +
                        std::to_string(nodes));
    }
    fold(r, "random formulas: exact leaf weights and unit sums", random_counts);
    return r;
}

SuiteReport run_maintree_suite(const SuiteConfig& cfg) {
    SuiteReport r;
    r.suite = "maintree";
    r.csv.push_back("instance,vars,orders,sets_checked,failed");
    Rng rng(cfg.seed);
    Tally t;
    int idx = 0;
    for (const Graph& g : connected_corpus()) {
        const Cnf f = phi_of_graph(g);
        const auto orders = instance_orders(g.num_vertices(), cfg.orders_per_instance, rng);
        long long inst_checked = 0, inst_failed = 0;
        for (const auto& ord : orders) {
            const Scdt tree = build_scdt(f, ord);
            const VerifyReport vr = verify_maintree_sweep(tree, g, cfg.maintree_max_s);
            t.absorb(vr, "family bound");
            inst_checked += vr.checked;
            inst_failed += vr.failed;
        }
        r.csv.push_back("graph" + std::to_string(idx) + ',' + std::to_string(f.num_vars) + ',' +
                        std::to_string(orders.size()) + ',' + std::to_string(inst_checked) + ',' +
                        std::to_string(inst_failed));
        ++idx;
    }
    fold(r, "path-family weight bound at every node and admissible set", t);
    return r;
}

SuiteReport run_manyvars_suite(const SuiteConfig& cfg) {
    SuiteReport r;
    r.suite = "manyvars";
    r.csv.push_back("graph,n,d,u_size,s_size,models,arrow_u,arrow_s,slack_bits,pass,route_pass");
    Rng rng(cfg.seed);
    const CountingConfig ccfg{cfg.var_cap};
    Tally t;
    std::vector<double> slacks;
    for (int i = 0; i < cfg.manyvars_graphs; ++i) {
        const int n = rand_int(rng, 4, 20);
        const Graph g = random_connected_graph_max_degree(n, 7, rng);
        std::vector<int> u = random_order(n, rng);
        u.resize(static_cast<std::size_t>(rand_int(rng, 1, n)));
        std::sort(u.begin(), u.end());
        const ManyvarsReport rep = verify_manyvars1(g, u, false, ccfg);
        t.expect(rep.pass, "aggregate restriction bound fails on instance " + std::to_string(i));
        t.expect(rep.route_pass, "per-step damping route fails on instance " + std::to_string(i));
        if (std::isfinite(rep.slack_bits)) slacks.push_back(rep.slack_bits);
        r.csv.push_back(std::to_string(i) + ',' + std::to_string(rep.n) + ',' +
                        std::to_string(rep.d) + ',' + std::to_string(rep.u_set.size()) + ',' +
                        std::to_string(rep.s_set.size()) + ',' + rep.phi_count.get_str() + ',' +
                        rep.arrow_u_count.get_str() + ',' + rep.arrow_s_count.get_str() + ',' +
                        fmt_double(rep.slack_bits) + ',' + flag(rep.pass) + ',' +
                        flag(rep.route_pass));
    }
    std::string extra;
    if (!slacks.empty()) {
        std::sort(slacks.begin(), slacks.end());
        extra = "slack bits min/median/max " + fmt_double(slacks.front()) + "/" +
                fmt_double(slacks[slacks.size() / 2]) + "/" + fmt_double(slacks.back());
    }
    fold(r, "aggregate positive-restriction bound on random bounded-degree graphs", t, extra);
    return r;
}

SuiteReport run_pmw_oracle_suite(const SuiteConfig& cfg) {
    SuiteReport r;
    r.suite = "pmw-oracle";
    r.csv.push_back("n,graphs,subsets,oracle_checks,witness_checks,order_checks");
    Rng rng(cfg.seed);
    const PmwConfig pcfg{cfg.perm_cap};
    Tally oracle_t, witness_t, order_t;
    for (int n = 1; n <= cfg.pmw_max_vertices; ++n) {
        const auto& graphs = iso_level(n);
        TinyMatcher tm;
        tm.resize(n);
        std::vector<int> wbuf(std::size_t{1} << n, 0), fbuf(std::size_t{1} << n, 0);
        const bool lattice = n <= cfg.witness_lattice_max_vertices;
        const unsigned full = static_cast<unsigned>((std::size_t{1} << n) - 1);
        long long oracle_n = 0, witness_n = 0, order_n = 0;
        for (const Graph& g : graphs) {
            const auto es = g.edges();
            const std::vector<int> table = pmw_oracle_table(g, tm);
            for (unsigned vset = 0; vset <= full; ++vset) {
                const std::vector<int> v_list = mask_bits(vset);
                const int brute = pmw_exact(g, v_list, pcfg);
                oracle_t.expect(brute == table[vset],
                                "ordering brute force and removal lattice disagree at n=" +
                                    std::to_string(n));
                ++oracle_n;
                if (!lattice) continue;
                fill_witness_values(g, es, vset, tm, wbuf);
                const int floor = witness_floor_from_values(vset, wbuf, fbuf);
                witness_t.expect(table[vset] >= (floor + 1) / 2,
                                 "width below half the minimum witness size at n=" +
                                     std::to_string(n));
                if (n <= 6)
                    witness_t.expect(min_witnessing_size_over_orders(g, v_list, pcfg) == floor,
                                     "library witness floor differs from the lattice");
                ++witness_n;
            }

            // Ordering-level spot checks on the full vertex set.
            std::vector<int> all_v(n);
            std::iota(all_v.begin(), all_v.end(), 0);
            int full_floor = -1;
            if (lattice) {
                fill_witness_values(g, es, full, tm, wbuf);
                full_floor = witness_floor_from_values(full, wbuf, fbuf);
            }
            for (int c = 0; c < 3; ++c) {
                std::vector<int> sv = all_v;
                if (c == 1) std::reverse(sv.begin(), sv.end());
                if (c == 2) std::shuffle(sv.begin(), sv.end(), rng);
                const WitnessingMatching w = witnessing_matching_exact(g, all_v, sv);
                std::string why;
                order_t.expect(is_witnessing(g, all_v, sv, w, &why),
                               "exhaustive witness fails the definition check: " + why);
                if (full_floor >= 0)
                    order_t.expect(static_cast<int>(w.m.size()) >= full_floor,
                                   "per-ordering witness below the min-over-orders floor");
                const PrefixMatching pm = witness_to_prefix(w, g, all_v, sv);
                order_t.expect(is_matching(g, pm.m), "prefix conversion is not a matching");
                order_t.expect(2 * static_cast<int>(pm.m.size()) >= static_cast<int>(w.m.size()),
                               "prefix conversion below half the witness size");
                unsigned pmask = 0;
                for (int i = 0; i < pm.prefix_len; ++i) pmask |= 1u << sv[static_cast<std::size_t>(i)];
                for (const auto& [a, b] : pm.m)
                    order_t.expect(((pmask >> a) & 1u) != ((pmask >> b) & 1u),
                                   "prefix matching edge does not cross the prefix cut");
                ++order_n;
            }
        }
        r.csv.push_back(std::to_string(n) + ',' + std::to_string(graphs.size()) + ',' +
                        std::to_string(std::size_t{1} << n) + ',' + std::to_string(oracle_n) + ',' +
                        std::to_string(witness_n) + ',' + std::to_string(order_n));
    }
    fold(r, "ordering brute force equals the removal-lattice oracle", oracle_t);
    fold(r, "width at least half the minimum witness size", witness_t);
    fold(r, "per-ordering witnesses: definition check and prefix conversion", order_t);
    return r;
}

SuiteReport run_tree_witness_suite(const SuiteConfig& cfg) {
    SuiteReport r;
    r.suite = "tree-witness";
    r.csv.push_back("k,height,vertices,samples,partial_min_size,full_min_size,c2_emp");
    Rng rng(cfg.seed);
    Tally t;
    const std::pair<int, int> instances[] = {{4, 0}, {4, 1}, {4, 2}, {4, 3}, {8, 1}, {8, 2}, {8, 3}};
    for (const auto& [k, h] : instances) {
        const ProductGraph p = build_gk_instance(k, h);
        const Graph& g = p.as_graph();
        const int pp = k / 4;
        const int n = p.num_vertices();
        const std::int64_t tnodes = p.tree().num_nodes();
        const int full_floor = pp * (tr(tnodes) - tr(pp));
        int min_partial = INT_MAX, min_full = INT_MAX;
        for (int s = 0; s < cfg.tree_samples_per_instance; ++s) {
            std::vector<int> v = random_occupying_subset(p, pp, rng);
            std::vector<int> sv = v;
            std::shuffle(sv.begin(), sv.end(), rng);
            const WitnessingMatching w = mwmain_witness(p, v, sv, pp);
            const Occupancy oc = occupied_set(p, v);
            const int x = tr(static_cast<std::int64_t>(oc.nodes.size()));
            t.expect(static_cast<int>(w.m.size()) >= pp * ((x - tr(pp)) / 2),
                     "partial-occupancy witness below its floor");
            std::string why;
            t.expect(is_witnessing(g, v, sv, w, &why),
                     "partial-occupancy witness fails the definition check: " + why);
            min_partial = std::min(min_partial, static_cast<int>(w.m.size()));

            std::vector<int> fv = random_full_occupancy_subset(p, rng);
            std::vector<int> fsv = fv;
            std::shuffle(fsv.begin(), fsv.end(), rng);
            const WitnessingMatching wf = perfpart_witness(p, fv, fsv, pp);
            t.expect(static_cast<int>(wf.m.size()) >= full_floor,
                     "full-occupancy witness below its floor");
            t.expect(n - wf.split >= pp * pp, "split leaves fewer than p^2 vertices beside the prefix");
            t.expect(n - (static_cast<int>(fv.size()) - wf.split) >= pp * pp,
                     "split leaves fewer than p^2 vertices beside the suffix");
            t.expect(is_witnessing(g, fv, fsv, wf, &why),
                     "full-occupancy witness fails the definition check: " + why);
            min_full = std::min(min_full, static_cast<int>(wf.m.size()));
        }

        // Width constant calibration on the everything-selected instance.
        std::vector<int> all_v(n);
        std::iota(all_v.begin(), all_v.end(), 0);
        const WitnessingMatching wc = perfpart_witness(p, all_v, all_v, pp);
        const PrefixMatching pm = witness_to_prefix(wc, g, all_v, all_v);
        t.expect(2 * static_cast<int>(pm.m.size()) >= static_cast<int>(wc.m.size()),
                 "prefix conversion below half the witness size");
        const double c2 = static_cast<double>((wc.m.size() + 1) / 2) /
                          (static_cast<double>(k) * std::log2(static_cast<double>(n)));
        r.csv.push_back(std::to_string(k) + ',' + std::to_string(h) + ',' + std::to_string(n) + ',' +
                        std::to_string(cfg.tree_samples_per_instance) + ',' +
                        std::to_string(min_partial) + ',' + std::to_string(min_full) + ',' +
                        fmt_double(c2));
    }
    fold(r, "tree-instance witness floors, split balance, and definition checks", t);
    return r;
}

SuiteReport run_nrobp_suite(const SuiteConfig& cfg) {
    SuiteReport r;
    r.suite = "nrobp";
    r.csv.push_back("function,vars,models,nodes,edges,fixed_cases");
    Rng rng(cfg.seed);
    Tally t;
    for (int i = 0; i < cfg.nrobp_functions; ++i) {
        const int n = rand_int(rng, 1, 9);
        const VarMask all = (VarMask{1} << n) - 1;
        const int max_models = static_cast<int>(std::min<std::size_t>(40, std::size_t{1} << n));
        const int want = rand_int(rng, 1, max_models);
        std::set<VarMask> picked;
        while (static_cast<int>(picked.size()) < want)
            picked.insert(std::uniform_int_distribution<VarMask>(0, all)(rng));
        const ModelSet f = make_model_set(all, {picked.begin(), picked.end()});
        const Nrobp z = build_order_nrobp(f, random_order(n, rng));
        t.expect(validate(z).valid(), "constructed program fails validation");
        t.expect(represented_function(z, cfg.path_cap) == f, "round trip loses the function");

        const NrobpAnalysis a(z);
        const auto paths = a.enumerate_paths(cfg.path_cap);
        t.expect(paths.size() == f.models.size(), "path count differs from model count");
        t.expect(a.path_count() == mpz_class(static_cast<unsigned long>(f.models.size())),
                 "counted paths differ from model count");

        int cases = 0;
        fixed_set_cases(a, paths, rng, t, &cases);
        r.csv.push_back(std::to_string(i) + ',' + std::to_string(n) + ',' +
                        std::to_string(f.models.size()) + ',' + std::to_string(z.num_nodes) + ',' +
                        std::to_string(z.edges.size()) + ',' + std::to_string(cases));
    }
    fold(r, "order-program round trips, path counts, and fixed sets", t);
    return r;
}

SuiteReport run_census_suite(const SuiteConfig& cfg) {
    SuiteReport r;
    r.suite = "census";
    r.csv.push_back("k,height,variant,models,paths,tuples,q,mu,b_product,max_f_a,"
                    "max_multiplicity,covering,eq21,eq23,cover_bound");
    Rng rng(cfg.seed);
    const CountingConfig ccfg{cfg.var_cap};
    Tally t;
    const std::pair<int, int> instances[] = {{4, 0}, {4, 1}, {8, 0}, {8, 1}};
    for (const auto& [k, h] : instances) {
        const PhiInstance inst = build_phi_k(k, h);
        const Graph& g = inst.product.as_graph();
        const ModelSet full = model_set_of(inst.cnf, ccfg);
        const int n = g.num_vertices();
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);

        auto run_variant = [&](const std::string& variant, const ModelSet& f,
                               const std::vector<int>& ord) {
            const Nrobp z = build_order_nrobp(f, ord);
            const BottleneckCensus c = bottleneck_census(z, g, 0, cfg.path_cap);
            const std::string tag =
                std::to_string(k) + "/" + std::to_string(h) + " " + variant + ": ";
            t.expect(c.covering, tag + "census does not cover every model");
            t.expect(c.eq21, tag + "family-size chain fails");
            t.expect(c.eq23, tag + "tuple-count chain fails");
            t.expect(c.max_edge_multiplicity <= 2,
                     tag + "matching edge claimed by more than two blocks");
            t.expect(c.cover_bound, tag + "fixed-set union below a seventh of the matching union");
            t.expect(c.model_count == f.models.size(), tag + "model count drift");
            t.expect(c.path_count == mpz_class(static_cast<unsigned long>(f.models.size())),
                     tag + "paths and models disagree");
            r.csv.push_back(std::to_string(k) + ',' + std::to_string(h) + ',' + variant + ',' +
                            std::to_string(f.models.size()) + ',' + c.path_count.get_str() + ',' +
                            std::to_string(c.tuples.size()) + ',' + std::to_string(c.q) + ',' +
                            std::to_string(c.mu) + ',' + c.b_product.get_str() + ',' +
                            std::to_string(c.max_f_a) + ',' +
                            std::to_string(c.max_edge_multiplicity) + ',' + flag(c.covering) +
                            ',' + flag(c.eq21) + ',' + flag(c.eq23) + ',' + flag(c.cover_bound));
            return c;
        };

        const BottleneckCensus base = run_variant("phi", full, order);
        run_variant("phi_shuffled", full, random_order(n, rng));

        {
            const Nrobp z = build_order_nrobp(full, order);
            const SingleBottleneckReport sb = single_bottleneck(z, g, cfg.path_cap);
            const std::string tag = std::to_string(k) + "/" + std::to_string(h) + ": ";
            t.expect(sb.covering, tag + "single-cut census does not cover every model");
            mpz_class covered_total = 0;
            for (const BottleneckCut& cut : sb.cuts) covered_total += cut.covered;
            t.expect(covered_total >= mpz_class(static_cast<unsigned long>(full.models.size())),
                     tag + "single-cut union bound fails");
        }

        int level = 0;
        for (double ratio = 0.5; ratio >= cfg.ratio - 1e-12 && ratio < 1.0; ratio *= 0.5) {
            const ModelSet thin = random_submodel_set(full, ratio, rng);
            run_variant("uniform" + std::to_string(++level), thin, order);
        }
        if (cfg.ratio < 1.0 && !base.tuples.empty()) {
            const CensusRow* biggest = &base.tuples.front();
            for (const CensusRow& row : base.tuples)
                if (row.f_a > biggest->f_a) biggest = &row;
            const ModelSet conc = concentrated_submodel_set(full, biggest->u_set, cfg.ratio);
            run_variant("concentrated", conc, order);
        }
    }
    fold(r, "multi-bottleneck censuses: covering, count chains, multiplicity, cover floor", t);
    return r;
}

ModelSet concentrated_submodel_set(const ModelSet& f, const std::vector<int>& u_set, double ratio) {
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw PreconditionError("concentrated_submodel_set: ratio must lie in (0, 1]");
    if (f.models.empty()) throw PreconditionError("concentrated_submodel_set: empty model set");
    std::size_t keep = static_cast<std::size_t>(
        std::llround(ratio * static_cast<double>(f.models.size())));
    keep = std::clamp<std::size_t>(keep, 1, f.models.size());
    VarMask u_mask = 0;
    for (int v : u_set) u_mask |= var_bit(v);
    std::vector<VarMask> hit, miss;
    for (VarMask m : f.models) ((m & u_mask) == u_mask ? hit : miss).push_back(m);
    const std::size_t drop = f.models.size() - keep;
    const std::size_t drop_hit = std::min(drop, hit.size());
    const std::size_t drop_miss = drop - drop_hit;
    std::vector<VarMask> kept(hit.begin() + static_cast<std::ptrdiff_t>(drop_hit), hit.end());
    kept.insert(kept.end(), miss.begin() + static_cast<std::ptrdiff_t>(drop_miss), miss.end());
    return make_model_set(f.vars, std::move(kept));
}

void write_suite_csv(std::ostream& os, const SuiteReport& r) {
    for (const std::string& line : r.csv) os << line << '\n';
}

} // namespace pmw
