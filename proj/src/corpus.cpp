#include "pmw/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>

#include "pmw/errors.hpp"

namespace pmw {

namespace {

// Placing new position k appends k contiguous bits (edges to the already
// placed vertices), earlier levels more significant, so codes compare level
// by level during the search. Pruning re-reads best on every step because
// leaves lower it mid-iteration.
struct CanonSearch {
    const Graph& g;
    int n;
    int total_bits;
    std::uint64_t best;
    std::vector<int> perm; // old vertex at each new position
    std::vector<char> used;

    explicit CanonSearch(const Graph& gg)
        : g(gg), n(gg.num_vertices()), total_bits(n * (n - 1) / 2), best(0) {
        perm.assign(static_cast<std::size_t>(n), -1);
        used.assign(static_cast<std::size_t>(n), 0);
        // identity seed so pruning has a leaf value from the start
        for (int k = 1; k < n; ++k) {
            std::uint64_t c = 0;
            for (int i = 0; i < k; ++i)
                if (g.has_edge(i, k)) c |= std::uint64_t{1} << (k - 1 - i);
            best |= c << shift(k);
        }
        dfs(0, 0);
    }

    int shift(int k) const { return total_bits - k * (k + 1) / 2; }

    std::uint64_t chunk_of(int k, int v) const {
        std::uint64_t c = 0;
        for (int i = 0; i < k; ++i)
            if (g.has_edge(perm[i], v)) c |= std::uint64_t{1} << (k - 1 - i);
        return c;
    }

    // prefix holds the chunks of levels 1..k-1.
    void dfs(int k, std::uint64_t prefix) {
        if (k == n) {
            if (prefix < best) best = prefix;
            return;
        }
        std::vector<std::pair<std::uint64_t, int>> cands;
        for (int v = 0; v < n; ++v)
            if (!used[v]) cands.emplace_back(chunk_of(k, v), v);
        std::sort(cands.begin(), cands.end());
        for (const auto& [c, v] : cands) {
            const std::uint64_t child = k == 0 ? 0 : prefix | (c << shift(k));
            // worse prefix than best cannot recover; the rest are even bigger
            if (k > 0 && (child >> shift(k)) > (best >> shift(k))) break;
            used[v] = 1;
            perm[k] = v;
            dfs(k + 1, child);
            used[v] = 0;
        }
    }
};

} // namespace

std::uint64_t canonical_code(const Graph& g) {
    const int n = g.num_vertices();
    if (n > 11) throw PreconditionError("canonical_code: more than 11 vertices");
    if (n <= 1) return 0;
    return CanonSearch(g).best;
}

std::vector<Graph> graphs_up_to_iso(int n) {
    if (n < 1 || n > 8) throw PreconditionError("graphs_up_to_iso: vertex count outside 1..8");
    std::vector<Graph> cur{Graph(1)};
    for (int k = 2; k <= n; ++k) {
        std::map<std::uint64_t, Graph> next;
        for (const Graph& g : cur) {
            for (std::uint64_t nb = 0; nb < (std::uint64_t{1} << (k - 1)); ++nb) {
                Graph h(k);
                for (const auto& [u, v] : g.edges()) h.add_edge(u, v);
                for (int i = 0; i < k - 1; ++i)
                    if (nb >> i & 1) h.add_edge(i, k - 1);
                const std::uint64_t code = canonical_code(h);
                next.try_emplace(code, std::move(h));
            }
        }
        cur.clear();
        cur.reserve(next.size());
        for (auto& [code, g] : next) cur.push_back(std::move(g));
    }
    return cur;
}

std::vector<Graph> connected_graphs_up_to_iso(int n) {
    std::vector<Graph> all = graphs_up_to_iso(n);
    std::vector<Graph> out;
    for (auto& g : all)
        if (g.is_connected()) out.push_back(std::move(g));
    return out;
}

Graph random_connected_graph_max_degree(int n, int max_degree, Rng& rng) {
    if (n < 0) throw PreconditionError("random graph: negative vertex count");
    Graph g(n);
    if (n <= 1) return g;
    if (max_degree < 1 || (n > 2 && max_degree < 2))
        throw PreconditionError("random graph: degree cap cannot support a spanning tree");
    for (int v = 1; v < n; ++v) {
        std::vector<int> open;
        for (int u = 0; u < v; ++u)
            if (g.degree(u) < max_degree) open.push_back(u);
        internal_check(!open.empty(), "random graph: attachment candidates exhausted");
        g.add_edge(open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)], v);
    }
    std::vector<std::pair<int, int>> rest;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (!g.has_edge(u, v)) rest.emplace_back(u, v);
    std::shuffle(rest.begin(), rest.end(), rng);
    int extra = std::uniform_int_distribution<int>(0, n)(rng);
    for (const auto& [u, v] : rest) {
        if (extra == 0) break;
        if (g.degree(u) < max_degree && g.degree(v) < max_degree) {
            g.add_edge(u, v);
            --extra;
        }
    }
    return g;
}

Graph random_graph_max_degree(int n, int max_degree, Rng& rng) {
    if (n < 0) throw PreconditionError("random graph: negative vertex count");
    if (max_degree < 0) throw PreconditionError("random graph: negative degree cap");
    Graph g(n);
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    const std::size_t target =
        pairs.empty() ? 0 : std::uniform_int_distribution<std::size_t>(0, pairs.size())(rng);
    std::size_t added = 0;
    for (const auto& [u, v] : pairs) {
        if (added == target) break;
        if (g.degree(u) < max_degree && g.degree(v) < max_degree) {
            g.add_edge(u, v);
            ++added;
        }
    }
    return g;
}

Cnf random_satisfiable_cnf(int num_vars, int num_clauses, int min_width, int max_width,
                           Rng& rng) {
    if (num_vars < 1 || num_vars > 64)
        throw PreconditionError("random cnf: variable count outside 1..64");
    if (min_width < 1 || max_width < min_width || max_width > num_vars)
        throw PreconditionError("random cnf: bad clause width range");
    if (num_clauses < 0) throw PreconditionError("random cnf: negative clause count");
    const VarMask planted =
        std::uniform_int_distribution<VarMask>(0, num_vars >= 64 ? ~VarMask{0}
                                                                 : (VarMask{1} << num_vars) - 1)(rng);
    Cnf f;
    f.num_vars = num_vars;
    std::vector<int> vars(static_cast<std::size_t>(num_vars));
    std::iota(vars.begin(), vars.end(), 0);
    for (int c = 0; c < num_clauses; ++c) {
        const int w = std::uniform_int_distribution<int>(min_width, max_width)(rng);
        std::shuffle(vars.begin(), vars.end(), rng);
        std::vector<int> clause;
        bool sat = false;
        for (int i = 0; i < w; ++i) {
            const int v = vars[i];
            const bool positive = std::uniform_int_distribution<int>(0, 1)(rng) == 1;
            clause.push_back(positive ? pos_lit(v) : neg_lit(v));
            sat = sat || positive == ((planted >> v & 1) != 0);
        }
        if (!sat) {
            const std::size_t i =
                std::uniform_int_distribution<std::size_t>(0, clause.size() - 1)(rng);
            clause[i] = -clause[i];
        }
        f.clauses.push_back(std::move(clause));
    }
    return f;
}

std::vector<int> random_order(int n, Rng& rng) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    return order;
}

ModelSet random_submodel_set(const ModelSet& f, double ratio, Rng& rng) {
    if (!(ratio > 0.0) || ratio > 1.0)
        throw PreconditionError("random_submodel_set: ratio outside (0,1]");
    if (f.models.empty()) throw PreconditionError("random_submodel_set: empty model set");
    const auto keep = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::llround(ratio * static_cast<double>(f.models.size()))));
    std::vector<VarMask> pool = f.models;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min(keep, pool.size()));
    return make_model_set(f.vars, std::move(pool));
}

} // namespace pmw
