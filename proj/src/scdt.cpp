#include "pmw/scdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "pmw/errors.hpp"

namespace pmw {

namespace {

constexpr std::size_t kFailureRowCap = 64;

void check_node(const Scdt& t, int u, const char* op) {
    if (u < 0 || u >= static_cast<int>(t.nodes.size()))
        throw PreconditionError(std::string(op) + ": node id out of range");
}

VarMask low_bits(int n) { return n >= 64 ? ~VarMask{0} : (VarMask{1} << n) - 1; }

void check_var_set(VarMask s, int n, const char* op) {
    if (s & ~low_bits(n))
        throw PreconditionError(std::string(op) + ": set mentions foreign variables");
}

struct Builder {
    Scdt& t;
    int n;

    int build(int parent, int depth, std::size_t lo, std::size_t hi, LiteralSet asg) {
        const int id = static_cast<int>(t.nodes.size());
        ScdtNode node;
        node.var = depth < n ? t.order[depth] : -1;
        node.parent = parent;
        node.depth = depth;
        node.assignment = asg;
        node.lo = lo;
        node.hi = hi;
        t.nodes.push_back(std::move(node));
        if (depth == n) {
            internal_check(hi - lo == 1, "scdt: leaf must hold exactly one model");
            return id;
        }
        const int v = t.order[depth];
        const auto begin = t.models.begin();
        const auto mid = static_cast<std::size_t>(
            std::partition_point(begin + static_cast<std::ptrdiff_t>(lo),
                                 begin + static_cast<std::ptrdiff_t>(hi),
                                 [v](VarMask m) { return (m >> v & 1) == 0; }) -
            begin);
        const std::size_t bounds[2][2] = {{lo, mid}, {mid, hi}};
        for (int side = 0; side < 2; ++side) {
            const std::size_t clo = bounds[side][0], chi = bounds[side][1];
            if (clo == chi) continue;
            LiteralSet casg = asg;
            casg.vars |= var_bit(v);
            if (side == 1) casg.pos |= var_bit(v);
            ScdtEdge e;
            e.positive = side == 1;
            e.weight = mpq_class(static_cast<unsigned long>(chi - clo),
                                 static_cast<unsigned long>(hi - lo));
            e.weight.canonicalize();
            e.child = build(id, depth + 1, clo, chi, casg);
            t.nodes[id].out.push_back(std::move(e));
        }
        return id;
    }
};

} // namespace

VarMask Scdt::leaf_model(int leaf) const {
    check_node(*this, leaf, "leaf_model");
    if (!is_leaf(leaf)) throw PreconditionError("leaf_model: node is not a leaf");
    return models[nodes[leaf].lo];
}

std::vector<int> Scdt::leaves() const {
    std::vector<int> out;
    for (int u = 0; u < static_cast<int>(nodes.size()); ++u)
        if (is_leaf(u)) out.push_back(u);
    return out;
}

Scdt build_scdt(const Cnf& f, const std::vector<int>& order, const CountingConfig& cfg) {
    if (static_cast<int>(order.size()) != f.num_vars)
        throw PreconditionError("build_scdt: order length differs from the variable count");
    std::vector<char> seen(static_cast<std::size_t>(f.num_vars), 0);
    for (int v : order) {
        if (v < 0 || v >= f.num_vars)
            throw PreconditionError("build_scdt: order mentions a foreign variable");
        if (seen[v]) throw PreconditionError("build_scdt: order repeats a variable");
        seen[v] = 1;
    }

    Scdt t;
    t.formula = f;
    t.order = order;
    t.models = enumerate_models(f, cfg);
    if (t.models.empty()) throw PreconditionError("build_scdt: the formula has no models");

    // Sort models by their branch sequence: order[0] decides first. The key is
    // a bit permutation of the model, so keys stay distinct.
    const int n = f.num_vars;
    std::vector<std::pair<VarMask, VarMask>> keyed;
    keyed.reserve(t.models.size());
    for (VarMask m : t.models) {
        VarMask key = 0;
        for (int i = 0; i < n; ++i) key = key << 1 | (m >> order[i] & 1);
        keyed.emplace_back(key, m);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) t.models[i] = keyed[i].second;

    Builder{t, n}.build(-1, 0, 0, t.models.size(), {});
    return t;
}

mpq_class path_weight(const Scdt& t, int node) {
    check_node(t, node, "path_weight");
    mpq_class w = 1;
    int cur = node;
    while (cur != 0) {
        const int par = t.nodes[cur].parent;
        bool found = false;
        for (const auto& e : t.nodes[par].out)
            if (e.child == cur) {
                w *= e.weight;
                found = true;
                break;
            }
        internal_check(found, "scdt: node missing from its parent's edges");
        cur = par;
    }
    return w;
}

namespace {

// Sum of u-to-leaf path weights whose branches set every s_set variable met
// below u positively. Variables of s_set assigned above u are ignored here;
// the public entry points zero those cases out.
mpq_class family_weight_raw(const Scdt& t, int u, VarMask s_set) {
    if (t.is_leaf(u)) return 1;
    const bool in_s = (s_set >> t.nodes[u].var & 1) != 0;
    mpq_class q = 0;
    for (const auto& e : t.nodes[u].out) {
        if (in_s && !e.positive) continue;
        q += e.weight * family_weight_raw(t, e.child, s_set);
    }
    return q;
}

} // namespace

mpq_class weight_of_path_family(const Scdt& t, int node, VarMask s_set) {
    check_node(t, node, "weight_of_path_family");
    check_var_set(s_set, t.num_vars(), "weight_of_path_family");
    if (s_set & t.nodes[node].assignment.vars) return 0;
    return family_weight_raw(t, node, s_set);
}

mpq_class weight_of_path_family_direct(const Scdt& t, int node, VarMask s_set) {
    check_node(t, node, "weight_of_path_family_direct");
    check_var_set(s_set, t.num_vars(), "weight_of_path_family_direct");
    const ScdtNode& nd = t.nodes[node];
    if (s_set & nd.assignment.vars) return 0;
    // Every u-to-leaf path weighs 1/(models below u) by telescoping, so the
    // family weight is the share of models below u containing s_set.
    unsigned long hits = 0;
    for (std::size_t i = nd.lo; i < nd.hi; ++i)
        if ((t.models[i] & s_set) == s_set) ++hits;
    mpq_class q(hits, static_cast<unsigned long>(nd.hi - nd.lo));
    q.canonicalize();
    return q;
}

std::vector<mpq_class> family_weights_all_nodes(const Scdt& t, VarMask s_set) {
    check_var_set(s_set, t.num_vars(), "family_weights_all_nodes");
    std::vector<mpq_class> w(t.nodes.size(), mpq_class(1));
    // Children follow their parent in the node array, so one reverse pass is
    // bottom-up.
    for (int u = static_cast<int>(t.nodes.size()) - 1; u >= 0; --u) {
        if (t.is_leaf(u)) continue;
        const bool in_s = (s_set >> t.nodes[u].var & 1) != 0;
        mpq_class q = 0;
        for (const auto& e : t.nodes[u].out) {
            if (in_s && !e.positive) continue;
            q += e.weight * w[e.child];
        }
        w[u] = std::move(q);
    }
    for (std::size_t u = 0; u < t.nodes.size(); ++u)
        if (s_set & t.nodes[u].assignment.vars) w[u] = 0;
    return w;
}

void dump_scdt(std::ostream& os, const Scdt& t) {
    for (std::size_t u = 0; u < t.nodes.size(); ++u)
        for (const auto& e : t.nodes[u].out) {
            const int v = t.nodes[u].var;
            os << u << ' ' << e.child << ' ' << (e.positive ? pos_lit(v) : neg_lit(v)) << ' '
               << e.weight.get_num() << '/' << e.weight.get_den() << '\n';
        }
}

bool forced_to_one(const Graph& g, int x, const LiteralSet& a) {
    if (x < 0 || x >= g.num_vertices())
        throw PreconditionError("forced_to_one: vertex out of range");
    if (a.vars & var_bit(x)) return false;
    const VarMask neg = a.vars & ~a.pos;
    return (g.neighbor_mask(x) & neg) != 0;
}

std::vector<int> live_neighbors(const Graph& g, int x, const LiteralSet& a) {
    if (x < 0 || x >= g.num_vertices())
        throw PreconditionError("live_neighbors: vertex out of range");
    std::vector<int> out;
    for (int w : g.neighbors(x))
        if (!(a.vars & var_bit(w)) && !forced_to_one(g, w, a)) out.push_back(w);
    return out;
}

mpq_class damping_constant(int d) {
    if (d < 0) throw PreconditionError("damping_constant: negative neighbor count");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(2 * d + 1));
    return mpq_class(den - 1, den); // gcd(2^k - 1, 2^k) = 1, already canonical
}

mpq_class alpha_bound(const Graph& g, VarMask s_set, const LiteralSet& a) {
    check_var_set(s_set, g.num_vertices(), "alpha_bound");
    mpq_class alpha = 1;
    for (int x = 0; x < g.num_vertices(); ++x)
        if (s_set & var_bit(x))
            alpha *= damping_constant(static_cast<int>(live_neighbors(g, x, a).size()));
    return alpha;
}

namespace {

void check_same_formula(const Scdt& t, const Graph& g, const char* op) {
    if (!(phi_of_graph(g) == t.formula))
        throw PreconditionError(std::string(op) + ": tree was not built from this graph's formula");
}

std::string set_item(const char* what, VarMask s) {
    std::string item = what;
    item += " S={";
    bool first = true;
    for (int v = 0; v < 64; ++v)
        if (s & var_bit(v)) {
            if (!first) item += ' ';
            item += std::to_string(v);
            first = false;
        }
    item += '}';
    return item;
}

void add_check(VerifyReport& r, bool collect_all, int node, std::string item, mpq_class lhs,
               mpq_class rhs, bool pass) {
    ++r.checked;
    if (!pass) ++r.failed;
    if (collect_all || (!pass && r.rows.size() < kFailureRowCap))
        r.rows.push_back({node, std::move(item), std::move(lhs), std::move(rhs), pass});
}

} // namespace

void write_report_csv(std::ostream& os, const VerifyReport& r) {
    os << "node,item,lhs,rhs,pass\n";
    for (const auto& row : r.rows)
        os << row.node << ',' << row.item << ',' << row.lhs.get_num() << '/'
           << row.lhs.get_den() << ',' << row.rhs.get_num() << '/' << row.rhs.get_den() << ','
           << (row.pass ? 1 : 0) << '\n';
}

MaintreeCheck verify_maintree(const Scdt& t, const Graph& g, int node, VarMask s_set, bool lax) {
    check_node(t, node, "verify_maintree");
    check_same_formula(t, g, "verify_maintree");
    check_var_set(s_set, t.num_vars(), "verify_maintree");
    std::vector<int> members;
    for (int v = 0; v < t.num_vars(); ++v)
        if (s_set & var_bit(v)) members.push_back(v);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (g.has_edge(members[i], members[j]))
                throw PreconditionError("verify_maintree: set members are adjacent");
            if (!lax && (g.neighbor_mask(members[i]) & g.neighbor_mask(members[j])) != 0)
                throw PreconditionError("verify_maintree: set members share a neighbor");
        }
    const LiteralSet& a = t.nodes[node].assignment;
    for (int v : members)
        if (forced_to_one(g, v, a))
            throw PreconditionError("verify_maintree: a set member is forced at the node");
    MaintreeCheck c;
    c.lhs = weight_of_path_family(t, node, s_set);
    c.rhs = alpha_bound(g, s_set, a);
    c.pass = c.lhs <= c.rhs;
    return c;
}

VerifyReport verify_maintree_sweep(const Scdt& t, const Graph& g, int max_s, bool lax,
                                   bool collect_all) {
    check_same_formula(t, g, "verify_maintree_sweep");
    if (max_s < 0) throw PreconditionError("verify_maintree_sweep: negative size bound");
    const int n = t.num_vars();

    std::vector<VarMask> sets;
    std::vector<int> chosen;
    auto admits = [&](int v) {
        for (int w : chosen)
            if (g.has_edge(v, w) || (!lax && (g.neighbor_mask(v) & g.neighbor_mask(w)) != 0))
                return false;
        return true;
    };
    auto rec = [&](auto&& self, int from, VarMask cur) -> void {
        sets.push_back(cur);
        if (static_cast<int>(chosen.size()) == max_s) return;
        for (int v = from; v < n; ++v) {
            if (!admits(v)) continue;
            chosen.push_back(v);
            self(self, v + 1, cur | var_bit(v));
            chosen.pop_back();
        }
    };
    rec(rec, 0, 0);

    VerifyReport r;
    std::vector<int> members;
    for (VarMask s : sets) {
        members.clear();
        for (int v = 0; v < n; ++v)
            if (s & var_bit(v)) members.push_back(v);
        const auto weights = family_weights_all_nodes(t, s);
        for (int u = 0; u < static_cast<int>(t.nodes.size()); ++u) {
            const LiteralSet& a = t.nodes[u].assignment;
            if (s & a.vars) continue; // a member is already assigned here
            bool forced = false;
            for (int v : members)
                if (forced_to_one(g, v, a)) {
                    forced = true;
                    break;
                }
            if (forced) continue; // hypothesis excludes this node
            mpq_class rhs = alpha_bound(g, s, a);
            const bool pass = weights[u] <= rhs;
            add_check(r, collect_all, u, set_item("maintree", s), weights[u], std::move(rhs),
                      pass);
        }
    }
    return r;
}

VerifyReport verify_largeportion_treeweights(const Scdt& t, const Graph& g, bool collect_all) {
    check_same_formula(t, g, "verify_largeportion_treeweights");
    VerifyReport r;
    const mpq_class half(1, 2);
    for (int u = 0; u < static_cast<int>(t.nodes.size()); ++u) {
        if (t.is_leaf(u)) continue;
        const ScdtNode& nd = t.nodes[u];
        const int x = nd.var;

        if (forced_to_one(g, x, nd.assignment)) {
            // A forced label must leave a single positive edge of weight 1.
            const bool shape =
                nd.out.size() == 1 && nd.out[0].positive && nd.out[0].weight == 1;
            add_check(r, collect_all, u, "forced-shape",
                      shape ? mpq_class(1) : nd.out[0].weight, mpq_class(1), shape);
            continue;
        }

        const auto live = live_neighbors(g, x, nd.assignment);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(live.size()) + 1);
        const mpq_class low(mpz_class(1), den); // canonical: power-of-two denominator
        const mpq_class high = 1 - low;

        const ScdtEdge* pos = nullptr;
        const ScdtEdge* neg = nullptr;
        for (const auto& e : nd.out) (e.positive ? pos : neg) = &e;
        if (pos == nullptr || neg == nullptr) {
            // An unforced label with one child contradicts the weight bounds.
            add_check(r, collect_all, u, "unforced-branching",
                      mpq_class(static_cast<unsigned long>(nd.out.size()), 1ul), mpq_class(2),
                      false);
            continue;
        }
        add_check(r, collect_all, u, "positive-weight", pos->weight, high,
                  half <= pos->weight && pos->weight <= high);
        add_check(r, collect_all, u, "negative-weight", neg->weight, half,
                  low <= neg->weight && neg->weight <= half);
    }
    return r;
}

ManyvarsReport verify_manyvars1(const Graph& g, const std::vector<int>& u_set, bool strict_subset,
                                const CountingConfig& cfg) {
    ManyvarsReport rep;
    rep.n = g.num_vertices();
    rep.d = g.max_degree();
    const Cnf f = phi_of_graph(g);

    VarMask u_mask = 0;
    for (int v : u_set) {
        if (v < 0 || v >= g.num_vertices())
            throw PreconditionError("verify_manyvars1: vertex out of range");
        if (u_mask & var_bit(v)) throw PreconditionError("verify_manyvars1: duplicate vertex");
        u_mask |= var_bit(v);
    }
    rep.u_set = u_set;
    std::sort(rep.u_set.begin(), rep.u_set.end());
    rep.s_set = independent_no_common_neighbor_subset(g, u_set, strict_subset);
    VarMask s_mask = 0;
    for (int v : rep.s_set) s_mask |= var_bit(v);

    rep.phi_count = count_models(f, cfg);
    rep.arrow_u_count = count_models_with_all_true(f, u_mask, cfg);
    rep.arrow_s_count = count_models_with_all_true(f, s_mask, cfg);

    // |phi<-U| <= |phi| / 2^(|U|/b) with b = (d+1)/log2(1/c_d) is equivalent,
    // after raising both sides to the (d+1)-th power, to
    //   |phi<-U|^(d+1) * 2^((2d+1)|U|) <= |phi|^(d+1) * (2^(2d+1)-1)^|U|.
    const unsigned long e = static_cast<unsigned long>(2 * rep.d + 1);
    mpz_class p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, e);
    const mpz_class p2m1 = p2 - 1;
    auto power_check = [&](const mpz_class& count, unsigned long set_size) {
        mpz_class lhs, rhs, scale;
        mpz_pow_ui(lhs.get_mpz_t(), count.get_mpz_t(), static_cast<unsigned long>(rep.d + 1));
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, e * set_size);
        lhs *= scale;
        mpz_pow_ui(rhs.get_mpz_t(), rep.phi_count.get_mpz_t(),
                   static_cast<unsigned long>(rep.d + 1));
        mpz_pow_ui(scale.get_mpz_t(), p2m1.get_mpz_t(), set_size);
        rhs *= scale;
        return lhs <= rhs;
    };
    rep.pass = power_check(rep.arrow_u_count, rep.u_set.size());

    // Proof-route form |phi<-S| / |phi| <= c_d^|S| needs no extra power.
    {
        mpz_class lhs, rhs, scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 2, e * rep.s_set.size());
        lhs = rep.arrow_s_count * scale;
        mpz_pow_ui(scale.get_mpz_t(), p2m1.get_mpz_t(), rep.s_set.size());
        rhs = rep.phi_count * scale;
        rep.route_pass = lhs <= rhs;
    }

    const double pow2 = std::ldexp(1.0, 2 * rep.d + 1);
    const double log2_inv_c = std::log2(pow2 / (pow2 - 1));
    rep.b_corrected = static_cast<double>(rep.d + 1) / log2_inv_c;
    rep.b_literal = log2_inv_c / static_cast<double>(rep.d + 1);
    if (rep.arrow_u_count == 0)
        rep.slack_bits = std::numeric_limits<double>::infinity();
    else
        rep.slack_bits = std::log2(rep.phi_count.get_d() / rep.arrow_u_count.get_d()) -
                         static_cast<double>(rep.u_set.size()) / rep.b_corrected;
    return rep;
}

} // namespace pmw
