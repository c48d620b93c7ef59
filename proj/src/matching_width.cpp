#include "pmw/matching_width.hpp"

#include <algorithm>
#include <climits>
#include <numeric>

#include "pmw/errors.hpp"

namespace pmw {

namespace {

void check_vertex_set(const Graph& g, const std::vector<int>& v_set, const char* op) {
    std::vector<char> seen(g.num_vertices(), 0);
    for (int v : v_set) {
        if (v < 0 || v >= g.num_vertices())
            throw PreconditionError(std::string(op) + ": vertex id out of range");
        if (seen[v]) throw PreconditionError(std::string(op) + ": duplicate vertex in set");
        seen[v] = 1;
    }
}

void check_permutation_of(const std::vector<int>& v_set, const std::vector<int>& sv, const char* op) {
    auto a = v_set;
    auto b = sv;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
        throw PreconditionError(std::string(op) + ": ordering is not a permutation of the vertex set");
}

// Edges usable by a matching supported at a given split: either both ends in
// the vertex set on opposite sides of the split, or exactly one end in the set.
std::vector<MatchEdge> supported_edges(const Graph& g, const std::vector<char>& in_v,
                                       const std::vector<char>& in_prefix) {
    std::vector<MatchEdge> out;
    for (auto [a, b] : g.edges()) {
        const bool cross = in_v[a] && in_v[b] && in_prefix[a] != in_prefix[b];
        const bool leaves = in_v[a] != in_v[b];
        if (cross || leaves) out.emplace_back(a, b);
    }
    return out;
}

} // namespace

int pmw_exact(const Graph& g, const std::vector<int>& v_set, const PmwConfig& cfg) {
    check_vertex_set(g, v_set, "pmw_exact");
    const int k = static_cast<int>(v_set.size());
    if (k == 0) return 0;
    if (k > cfg.perm_cap)
        throw CapExceeded("pmw_exact: vertex set larger than the ordering-enumeration cap");

    std::vector<int> base = v_set;
    std::sort(base.begin(), base.end());
    std::vector<int> cut(std::size_t{1} << k, -1);
    auto cut_value = [&](unsigned mask) {
        int& c = cut[mask];
        if (c < 0) {
            std::vector<int> prefix;
            for (int i = 0; i < k; ++i)
                if (mask >> i & 1u) prefix.push_back(base[i]);
            c = static_cast<int>(max_matching_across_cut(g, prefix).size());
        }
        return c;
    };

    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    int best = INT_MAX;
    do {
        unsigned mask = 0;
        int peak = 0;
        for (int i = 0; i < k; ++i) {
            mask |= 1u << perm[i];
            peak = std::max(peak, cut_value(mask));
            if (peak >= best) break; // cannot improve the minimum
        }
        best = std::min(best, peak);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

WitnessingMatching witnessing_matching_exact(const Graph& g, const std::vector<int>& v_set,
                                             const std::vector<int>& sv) {
    check_vertex_set(g, v_set, "witnessing_matching_exact");
    check_permutation_of(v_set, sv, "witnessing_matching_exact");
    const int n = g.num_vertices();
    std::vector<char> in_v(n, 0), in_prefix(n, 0);
    for (int v : v_set) in_v[v] = 1;

    WitnessingMatching best;
    int best_size = -1;
    for (int t = 0; t <= static_cast<int>(sv.size()); ++t) {
        if (t > 0) in_prefix[sv[t - 1]] = 1;
        auto m = max_matching_in_edges(n, supported_edges(g, in_v, in_prefix));
        if (static_cast<int>(m.size()) > best_size) {
            best_size = static_cast<int>(m.size());
            best = {std::move(m), t};
        }
    }
    return best;
}

bool is_witnessing(const Graph& g, const std::vector<int>& v_set, const std::vector<int>& sv,
                   const WitnessingMatching& w, std::string* why) {
    check_vertex_set(g, v_set, "is_witnessing");
    check_permutation_of(v_set, sv, "is_witnessing");
    auto reject = [&](const std::string& r) {
        if (why) *why = r;
        return false;
    };
    if (w.split < 0 || w.split > static_cast<int>(sv.size())) return reject("split out of range");
    if (!is_matching(g, w.m)) return reject("not a matching of the graph");
    const int n = g.num_vertices();
    std::vector<char> in_v(n, 0), in_prefix(n, 0);
    for (int v : v_set) in_v[v] = 1;
    for (int t = 0; t < w.split; ++t) in_prefix[sv[t]] = 1;
    for (auto [a, b] : w.m) {
        const bool cross = in_v[a] && in_v[b] && in_prefix[a] != in_prefix[b];
        const bool leaves = in_v[a] != in_v[b];
        if (!cross && !leaves)
            return reject("edge {" + std::to_string(a) + "," + std::to_string(b) +
                          "} is not supported by the split");
    }
    return true;
}

int min_witnessing_size_over_orders(const Graph& g, const std::vector<int>& v_set,
                                    const PmwConfig& cfg) {
    check_vertex_set(g, v_set, "min_witnessing_size_over_orders");
    const int k = static_cast<int>(v_set.size());
    if (k > cfg.perm_cap)
        throw CapExceeded("min_witnessing_size_over_orders: vertex set larger than the cap");
    std::vector<int> base = v_set;
    std::sort(base.begin(), base.end());
    const int n = g.num_vertices();
    std::vector<char> in_v(n, 0);
    for (int v : base) in_v[v] = 1;

    const std::size_t full = std::size_t{1} << k;
    std::vector<int> w(full), f(full);
    std::vector<char> in_prefix(n, 0);
    for (std::size_t mask = 0; mask < full; ++mask) {
        std::fill(in_prefix.begin(), in_prefix.end(), 0);
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1u) in_prefix[base[i]] = 1;
        w[mask] = static_cast<int>(max_matching_in_edges(n, supported_edges(g, in_v, in_prefix)).size());
    }
    f[0] = w[0];
    for (std::size_t mask = 1; mask < full; ++mask) {
        int m = INT_MAX;
        for (int i = 0; i < k; ++i)
            if (mask >> i & 1u) m = std::min(m, f[mask ^ (std::size_t{1} << i)]);
        f[mask] = std::max(w[mask], m);
    }
    return f[full - 1];
}

PrefixMatching witness_to_prefix(const WitnessingMatching& w, const Graph& g,
                                 const std::vector<int>& v_set, const std::vector<int>& sv) {
    std::string why;
    if (!is_witnessing(g, v_set, sv, w, &why))
        throw PreconditionError("witness_to_prefix: " + why);
    const int n = g.num_vertices();
    std::vector<char> in_v(n, 0);
    for (int v : v_set) in_v[v] = 1;
    Matching cross, leaves;
    for (auto [a, b] : w.m) {
        if (in_v[a] != in_v[b])
            leaves.emplace_back(a, b);
        else
            cross.emplace_back(a, b);
    }
    if (cross.size() >= leaves.size()) return {w.split, cross};
    return {static_cast<int>(sv.size()), leaves};
}

Matching matching_from_role_path(const ProductGraph& p, int node_u, int node_v,
                                 const std::vector<int>& indices, const RolePartition& parts) {
    if (node_u == node_v) throw PreconditionError("role path: tree nodes must differ");
    if (node_u < 0 || node_v < 0 || node_u >= p.tree().num_nodes() || node_v >= p.tree().num_nodes())
        throw PreconditionError("role path: tree node out of range");
    std::vector<char> seen(p.pattern_size(), 0);
    for (int i : indices) {
        if (i < 0 || i >= p.pattern_size())
            throw PreconditionError("role path: pattern index out of range");
        if (seen[i]) throw PreconditionError("role path: duplicate pattern index");
        seen[i] = 1;
        if (parts(p.vertex_id(node_u, i)) == parts(p.vertex_id(node_v, i)))
            throw PreconditionError("role path: endpoint roles agree at index " + std::to_string(i));
    }
    const auto nodes = p.tree().path(node_u, node_v);
    Matching m;
    for (int i : indices) {
        bool found = false;
        for (std::size_t s = 0; s + 1 < nodes.size(); ++s) {
            int a = p.vertex_id(nodes[s], i), b = p.vertex_id(nodes[s + 1], i);
            if (parts(a) != parts(b)) {
                m.emplace_back(a, b);
                found = true;
                break;
            }
        }
        internal_check(found, "role path: no role change along a path with differing endpoint roles");
    }
    return m;
}

namespace {

std::vector<char> region_flags(const ProductGraph& p, const std::vector<int>& region, const char* op) {
    std::vector<char> in_region(p.tree().num_nodes(), 0);
    for (int node : region) {
        if (node < 0 || node >= p.tree().num_nodes())
            throw PreconditionError(std::string(op) + ": region node out of range");
        in_region[node] = 1;
    }
    return in_region;
}

} // namespace

Matching matching_goodpart3(const ProductGraph& p, const std::vector<int>& region,
                            const RolePartition& parts, int pp) {
    if (pp < 1) throw PreconditionError("goodpart3: p must be positive");
    if (static_cast<int>(region.size()) < pp)
        throw PreconditionError("goodpart3: region has fewer than p tree nodes");
    if (!p.pattern().is_connected())
        throw PreconditionError("goodpart3: pattern graph must be connected");
    const int hs = p.pattern_size();
    if (hs < 2 * pp)
        throw PreconditionError("goodpart3: pattern has fewer than 2p vertices");
    if (static_cast<int>(parts.role.size()) != p.num_vertices())
        throw PreconditionError("goodpart3: role table size mismatch");

    const auto in_region = region_flags(p, region, "goodpart3");
    long long n_first = 0, n_second = 0;
    for (int v = 0; v < p.num_vertices(); ++v) {
        if (parts(v) == Role::Outside) continue;
        if (!in_region[p.tree_node(v)])
            throw PreconditionError("goodpart3: vertex set leaves the region's copies");
        (parts(v) == Role::First ? n_first : n_second) += 1;
    }
    for (int node : region) {
        bool occupied = false;
        for (int i = 0; i < hs && !occupied; ++i)
            occupied = parts(p.vertex_id(node, i)) != Role::Outside;
        if (!occupied)
            throw PreconditionError("goodpart3: region copy at node " + std::to_string(node) +
                                    " does not meet the vertex set");
    }
    const long long total = static_cast<long long>(region.size()) * hs;
    if (n_first > total - static_cast<long long>(pp) * pp ||
        n_second > total - static_cast<long long>(pp) * pp)
        throw PreconditionError("goodpart3: a part leaves fewer than p^2 product vertices uncovered");

    std::vector<int> nonhomog, homog;
    for (int node : region) {
        Role r = parts(p.vertex_id(node, 0));
        bool same = true;
        for (int i = 1; i < hs && same; ++i) same = parts(p.vertex_id(node, i)) == r;
        (same ? homog : nonhomog).push_back(node);
    }

    if (static_cast<int>(nonhomog.size()) >= pp) {
        Matching m;
        for (int node : nonhomog) {
            bool found = false;
            for (auto [i, j] : p.pattern().edges()) {
                if (parts(p.vertex_id(node, i)) != parts(p.vertex_id(node, j))) {
                    m.emplace_back(p.vertex_id(node, i), p.vertex_id(node, j));
                    found = true;
                    break;
                }
            }
            internal_check(found, "goodpart3: mixed copy without a role-crossing pattern edge");
        }
        return m;
    }

    internal_check(!homog.empty(), "goodpart3: no homogeneous copy despite few mixed ones");
    // Occupied homogeneous copies carry a single non-outside role.
    std::vector<int> idx(pp);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t a = 0; a < homog.size(); ++a)
        for (std::size_t b = a + 1; b < homog.size(); ++b) {
            if (parts(p.vertex_id(homog[a], 0)) != parts(p.vertex_id(homog[b], 0)))
                return matching_from_role_path(p, homog[a], homog[b], idx, parts);
        }

    // All homogeneous copies share one role; find a copy with >= p vertices of
    // another role (the uncovered-p^2 slack forces one to exist).
    const Role r = parts(p.vertex_id(homog[0], 0));
    internal_check(r != Role::Outside, "goodpart3: occupied homogeneous copy with outside role");
    for (int node : region) {
        std::vector<int> off_role;
        for (int i = 0; i < hs; ++i)
            if (parts(p.vertex_id(node, i)) != r) off_role.push_back(i);
        if (static_cast<int>(off_role.size()) >= pp) {
            off_role.resize(pp);
            return matching_from_role_path(p, homog[0], node, off_role, parts);
        }
    }
    internal_failure("goodpart3: no copy with p off-role vertices despite the balance bound");
}

Matching matching_goodpart3(const ProductGraph& p, const std::vector<int>& v_set,
                            const std::vector<int>& v1, const std::vector<int>& v2, int pp) {
    {
        auto a = v1;
        a.insert(a.end(), v2.begin(), v2.end());
        auto b = v_set;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            throw PreconditionError("goodpart3: parts do not partition the vertex set");
    }
    const Occupancy oc = occupied_set(p, v_set);
    if (static_cast<int>(oc.nodes.size()) != p.tree().num_nodes())
        throw PreconditionError("goodpart3: every tree node must be occupied");
    std::vector<int> region(p.tree().num_nodes());
    std::iota(region.begin(), region.end(), 0);
    return matching_goodpart3(p, region, RolePartition::from_sets(p.num_vertices(), v1, v2), pp);
}

Matching matching_goodpart1(const ProductGraph& p, const std::vector<int>& region,
                            const std::vector<int>& v_set, int pp) {
    if (pp < 1) throw PreconditionError("goodpart1: p must be positive");
    if (!p.pattern().is_connected())
        throw PreconditionError("goodpart1: pattern graph must be connected");
    const int hs = p.pattern_size();
    if (hs < pp) throw PreconditionError("goodpart1: pattern has fewer than p vertices");
    const auto in_region = region_flags(p, region, "goodpart1");
    std::vector<char> in_v(p.num_vertices(), 0);
    for (int v : v_set) {
        if (v < 0 || v >= p.num_vertices())
            throw PreconditionError("goodpart1: vertex id out of range");
        if (!in_region[p.tree_node(v)])
            throw PreconditionError("goodpart1: vertex set leaves the region's copies");
        in_v[v] = 1;
    }
    const Occupancy oc = occupied_set_in_region(p, region, v_set);
    if (static_cast<int>(oc.nodes.size()) < pp)
        throw PreconditionError("goodpart1: fewer than p occupied region nodes");
    if (oc.nodes.size() == region.size())
        throw PreconditionError("goodpart1: every region node is occupied");

    bool any_complete = false;
    for (char c : oc.complete) any_complete = any_complete || c != 0;

    if (!any_complete) {
        // Every occupied copy has a boundary edge between its V part and the rest.
        Matching m;
        for (int node : oc.nodes) {
            bool found = false;
            for (auto [i, j] : p.pattern().edges()) {
                if (in_v[p.vertex_id(node, i)] != in_v[p.vertex_id(node, j)]) {
                    m.emplace_back(p.vertex_id(node, i), p.vertex_id(node, j));
                    found = true;
                    break;
                }
            }
            internal_check(found, "goodpart1: incomplete occupied copy without a boundary edge");
        }
        return m;
    }

    int complete_node = -1;
    for (std::size_t i = 0; i < oc.nodes.size(); ++i)
        if (oc.complete[i]) {
            complete_node = oc.nodes[i];
            break;
        }
    int empty_node = -1;
    {
        std::vector<char> occupied(p.tree().num_nodes(), 0);
        for (int node : oc.nodes) occupied[node] = 1;
        std::vector<int> sorted_region = region;
        std::sort(sorted_region.begin(), sorted_region.end());
        for (int node : sorted_region)
            if (!occupied[node]) {
                empty_node = node;
                break;
            }
    }
    internal_check(complete_node >= 0 && empty_node >= 0, "goodpart1: case analysis");

    auto parts = RolePartition::from_sets(p.num_vertices(), v_set, {});
    std::vector<int> idx(pp);
    std::iota(idx.begin(), idx.end(), 0);
    auto m = matching_from_role_path(p, complete_node, empty_node, idx, parts);
    for (int node : p.tree().path(complete_node, empty_node))
        internal_check(in_region[node], "goodpart1: walk left the region");
    return m;
}

Matching matching_goodpart1(const ProductGraph& p, const std::vector<int>& v_set, int pp) {
    std::vector<int> region(p.tree().num_nodes());
    std::iota(region.begin(), region.end(), 0);
    return matching_goodpart1(p, region, v_set, pp);
}

namespace {

struct WidthCtx {
    const ProductGraph& p;
    const std::vector<int>& sv;
    std::vector<int> pos_of; // product vertex -> position in sv, -1 if absent
    int pp = 1;
    int trp = 0;
};

WidthCtx make_ctx(const ProductGraph& p, const std::vector<int>& sv, int pp) {
    WidthCtx c{p, sv, std::vector<int>(p.num_vertices(), -1), pp, tr(pp)};
    for (std::size_t i = 0; i < sv.size(); ++i) c.pos_of[sv[i]] = static_cast<int>(i);
    return c;
}

// A matching plus the sv position of the last element of its supporting prefix.
struct PartialWitness {
    Matching m;
    int prefix_end_pos = -1;
};

std::vector<int> local_positions(const WidthCtx& c, const std::vector<int>& nodes) {
    std::vector<int> local;
    for (int node : nodes)
        for (int i = 0; i < c.p.pattern_size(); ++i) {
            int pos = c.pos_of[c.p.vertex_id(node, i)];
            if (pos >= 0) local.push_back(pos);
        }
    std::sort(local.begin(), local.end());
    return local;
}

PartialWitness perfpart_rec(const WidthCtx& c, int root) {
    const auto& t = c.p.tree();
    const int h = t.subtree_height(root);
    const int hs = c.p.pattern_size();
    auto nodes = t.subtree_nodes(root);
    auto local = local_positions(c, nodes);
    internal_check(!local.empty(), "perfpart: fully occupied subtree with no vertices");
    const long long total = static_cast<long long>(nodes.size()) * hs;
    const long long psq = static_cast<long long>(c.pp) * c.pp;

    if (h - c.trp <= 1) {
        const int len = static_cast<int>(local.size());
        const int split = (len + 1) / 2; // extra element goes to the prefix
        internal_check(split <= total - psq && (len - split) <= total - psq,
                       "perfpart: base-case balance");
        std::vector<int> first, second;
        for (int i = 0; i < len; ++i)
            (i < split ? first : second).push_back(c.sv[local[i]]);
        auto parts = RolePartition::from_sets(c.p.num_vertices(), first, second);
        Matching m = matching_goodpart3(c.p, nodes, parts, c.pp);
        return {std::move(m), local[split - 1]};
    }

    PartialWitness sub[3];
    int order[3] = {0, 1, 2};
    for (int j = 0; j < 3; ++j) sub[j] = perfpart_rec(c, t.child(root, j));
    std::sort(order, order + 3,
              [&](int a, int b) { return sub[a].prefix_end_pos < sub[b].prefix_end_pos; });
    const int mid = order[1];
    const int u_mid_pos = sub[mid].prefix_end_pos;

    auto removed = t.subtree_nodes(t.child(root, mid));
    std::vector<int> region;
    std::set_difference(nodes.begin(), nodes.end(), removed.begin(), removed.end(),
                        std::back_inserter(region));
    std::vector<int> first, second;
    for (int node : region)
        for (int i = 0; i < hs; ++i) {
            int vid = c.p.vertex_id(node, i);
            int pos = c.pos_of[vid];
            if (pos < 0) continue;
            (pos <= u_mid_pos ? first : second).push_back(vid);
        }
    const long long region_total = static_cast<long long>(region.size()) * hs;
    internal_check(static_cast<long long>(first.size()) <= region_total - psq &&
                       static_cast<long long>(second.size()) <= region_total - psq,
                   "perfpart: recursive-case balance");
    auto parts = RolePartition::from_sets(c.p.num_vertices(), first, second);
    Matching mstar = matching_goodpart3(c.p, region, parts, c.pp);

    Matching m = sub[mid].m;
    m.insert(m.end(), mstar.begin(), mstar.end());

    const int len = static_cast<int>(local.size());
    const int split =
        static_cast<int>(std::upper_bound(local.begin(), local.end(), u_mid_pos) - local.begin());
    internal_check(split <= total - psq && (len - split) <= total - psq,
                   "perfpart: combined balance");
    internal_check(static_cast<int>(m.size()) >= c.pp * (h - c.trp), "perfpart: size guarantee");
    return {std::move(m), u_mid_pos};
}

SubtreeSequence subtree_sequence_from(const ProductGraph& p, int start_root,
                                      const std::vector<int>& v_start, int pp) {
    const auto& t = p.tree();
    SubtreeSequence seq;
    int cur_root = start_root;
    std::vector<int> cur_v = v_start;
    std::sort(cur_v.begin(), cur_v.end());
    int first_oc = -1;
    for (;;) {
        const Occupancy oc = occupied_set_in_region(p, t.subtree_nodes(cur_root), cur_v);
        const int noc = static_cast<int>(oc.nodes.size());
        seq.steps.push_back({cur_root, cur_v, noc});
        if (first_oc < 0) first_oc = noc;
        if (first_oc - noc >= pp) break;
        internal_check(!t.is_leaf(cur_root), "subtree sequence: reached a leaf while still large");
        int best_child = -1, best_count = -1;
        for (int j = 0; j < 3; ++j) {
            int ch = t.child(cur_root, j);
            std::vector<char> in_sub(t.num_nodes(), 0);
            for (int node : t.subtree_nodes(ch)) in_sub[node] = 1;
            std::vector<char> occ(t.num_nodes(), 0);
            int cnt = 0;
            for (int v : cur_v) {
                int node = p.tree_node(v);
                if (in_sub[node] && !occ[node]) {
                    occ[node] = 1;
                    ++cnt;
                }
            }
            if (cnt > best_count) {
                best_count = cnt;
                best_child = ch;
            }
        }
        std::vector<char> in_sub(t.num_nodes(), 0);
        for (int node : t.subtree_nodes(best_child)) in_sub[node] = 1;
        std::vector<int> next_v;
        for (int v : cur_v)
            if (in_sub[p.tree_node(v)]) next_v.push_back(v);
        cur_root = best_child;
        cur_v = std::move(next_v);
    }
    return seq;
}

PartialWitness mwmain_rec(const WidthCtx& c, int root, const std::vector<int>& v_cur) {
    const auto& t = c.p.tree();
    auto nodes = t.subtree_nodes(root);
    const Occupancy oc = occupied_set_in_region(c.p, nodes, v_cur);
    const int noc = static_cast<int>(oc.nodes.size());
    internal_check(noc >= c.pp, "mwmain: occupied count below p in recursion");
    const int x = tr(noc);
    auto local = local_positions(c, nodes);
    internal_check(!local.empty(), "mwmain: empty vertex set in recursion");

    if (x - c.trp < 2) return {{}, local.back()};

    if (noc == static_cast<int>(nodes.size())) return perfpart_rec(c, root);

    if (x - c.trp < 4) {
        Matching m = matching_goodpart1(c.p, nodes, v_cur, c.pp);
        return {std::move(m), local.back()};
    }

    const SubtreeSequence seq = subtree_sequence_from(c.p, root, v_cur, c.pp);
    const SubtreeStep& last = seq.steps.back();
    PartialWitness wq = mwmain_rec(c, last.root, last.v_set);

    const int y = tr(std::max(1, last.oc_size));
    internal_check(y >= x - 2, "mwmain: occupied count dropped too fast along the sequence");

    auto removed = t.subtree_nodes(last.root);
    std::vector<int> region;
    std::set_difference(nodes.begin(), nodes.end(), removed.begin(), removed.end(),
                        std::back_inserter(region));
    std::vector<char> in_removed(t.num_nodes(), 0);
    for (int node : removed) in_removed[node] = 1;
    std::vector<int> v_rest;
    for (int v : v_cur)
        if (!in_removed[c.p.tree_node(v)]) v_rest.push_back(v);

    Matching m1 = matching_goodpart1(c.p, region, v_rest, c.pp);
    Matching m = wq.m;
    m.insert(m.end(), m1.begin(), m1.end());
    internal_check(static_cast<int>(m.size()) >= c.pp * ((x - c.trp) / 2),
                   "mwmain: size guarantee");
    return {std::move(m), wq.prefix_end_pos};
}

} // namespace

WitnessingMatching perfpart_witness(const ProductGraph& p, const std::vector<int>& v_set,
                                    const std::vector<int>& sv, int pp) {
    if (pp < 1) throw PreconditionError("perfpart: p must be positive");
    if (!p.pattern().is_connected())
        throw PreconditionError("perfpart: pattern graph must be connected");
    if (p.pattern_size() < 2 * pp)
        throw PreconditionError("perfpart: pattern has fewer than 2p vertices");
    if (p.tree().num_nodes() < pp)
        throw PreconditionError("perfpart: tree has fewer than p nodes");
    check_vertex_set(p.as_graph(), v_set, "perfpart");
    check_permutation_of(v_set, sv, "perfpart");
    const Occupancy oc = occupied_set(p, v_set);
    if (static_cast<int>(oc.nodes.size()) != p.tree().num_nodes())
        throw PreconditionError("perfpart: every tree node must be occupied");

    const WidthCtx c = make_ctx(p, sv, pp);
    PartialWitness w = perfpart_rec(c, 0);
    return {std::move(w.m), w.prefix_end_pos + 1};
}

SubtreeSequence minimal_largest_subtree_sequence(const ProductGraph& p,
                                                 const std::vector<int>& v_set, int pp) {
    if (pp < 1) throw PreconditionError("subtree sequence: p must be positive");
    check_vertex_set(p.as_graph(), v_set, "subtree sequence");
    const Occupancy oc = occupied_set(p, v_set);
    if (static_cast<int>(oc.nodes.size()) <= pp)
        throw PreconditionError("subtree sequence: need more than p occupied nodes");
    return subtree_sequence_from(p, 0, v_set, pp);
}

WitnessingMatching mwmain_witness(const ProductGraph& p, const std::vector<int>& v_set,
                                  const std::vector<int>& sv, int pp) {
    if (pp < 1) throw PreconditionError("mwmain: p must be positive");
    if (!p.pattern().is_connected())
        throw PreconditionError("mwmain: pattern graph must be connected");
    if (p.pattern_size() < 2 * pp)
        throw PreconditionError("mwmain: pattern has fewer than 2p vertices");
    check_vertex_set(p.as_graph(), v_set, "mwmain");
    check_permutation_of(v_set, sv, "mwmain");
    const Occupancy oc = occupied_set(p, v_set);
    if (static_cast<int>(oc.nodes.size()) < pp)
        throw PreconditionError("mwmain: fewer than p occupied nodes");

    std::vector<int> v_sorted = v_set;
    std::sort(v_sorted.begin(), v_sorted.end());
    const WidthCtx c = make_ctx(p, sv, pp);
    PartialWitness w = mwmain_rec(c, 0, v_sorted);
    return {std::move(w.m), w.prefix_end_pos + 1};
}

} // namespace pmw
