#include "pmw/matching.hpp"

#include <algorithm>

#include "pmw/errors.hpp"

namespace pmw {

bool is_matching(const Graph& g, const Matching& m) {
    std::vector<char> used(g.num_vertices(), 0);
    for (auto [u, v] : m) {
        if (!g.has_edge(u, v)) return false;
        if (used[u] || used[v]) return false;
        used[u] = used[v] = 1;
    }
    return true;
}

namespace {

// Kuhn's algorithm on the bipartite graph (left = a_set, right = rest).
struct CutMatcher {
    const Graph& g;
    std::vector<char> in_a;
    std::vector<int> match_of; // over all vertices, -1 = free
    std::vector<char> visited;

    explicit CutMatcher(const Graph& graph, const std::vector<int>& a_set)
        : g(graph), in_a(graph.num_vertices(), 0), match_of(graph.num_vertices(), -1),
          visited(graph.num_vertices(), 0) {
        for (int v : a_set) {
            if (v < 0 || v >= g.num_vertices())
                throw PreconditionError("max_matching_across_cut: vertex id out of range");
            in_a[v] = 1;
        }
    }

    bool try_augment(int u) {
        for (int w : g.neighbors(u)) {
            if (in_a[w] || visited[w]) continue;
            visited[w] = 1;
            if (match_of[w] == -1 || try_augment(match_of[w])) {
                match_of[w] = u;
                match_of[u] = w;
                return true;
            }
        }
        return false;
    }
};

} // namespace

Matching max_matching_across_cut(const Graph& g, const std::vector<int>& a_set) {
    CutMatcher m(g, a_set);
    for (int u : a_set) {
        if (m.match_of[u] != -1) continue;
        std::fill(m.visited.begin(), m.visited.end(), 0);
        m.try_augment(u);
    }
    Matching out;
    for (int u : a_set)
        if (m.match_of[u] != -1) out.emplace_back(u, m.match_of[u]);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// Standard O(V^3) blossom algorithm over an explicit adjacency list.
struct Blossom {
    int n;
    std::vector<std::vector<int>> adj;
    std::vector<int> match, p, base;
    std::vector<char> used, blossom;

    explicit Blossom(int n_, const std::vector<MatchEdge>& edges)
        : n(n_), adj(n_), match(n_, -1), p(n_), base(n_), used(n_), blossom(n_) {
        for (auto [u, v] : edges) {
            if (u < 0 || v < 0 || u >= n || v >= n || u == v)
                throw PreconditionError("max_matching_in_edges: bad edge");
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
    }

    int lca(int a, int b) {
        std::vector<char> used_path(n, 0);
        for (;;) {
            a = base[a];
            used_path[a] = 1;
            if (match[a] == -1) break;
            a = p[match[a]];
        }
        for (;;) {
            b = base[b];
            if (used_path[b]) return b;
            b = p[match[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = 1;
            blossom[base[match[v]]] = 1;
            p[v] = child;
            child = match[v];
            v = p[match[v]];
        }
    }

    int find_path(int root) {
        std::fill(used.begin(), used.end(), 0);
        std::fill(p.begin(), p.end(), -1);
        for (int i = 0; i < n; ++i) base[i] = i;
        used[root] = 1;
        std::vector<int> q{root};
        for (std::size_t head = 0; head < q.size(); ++head) {
            int v = q[head];
            for (int to : adj[v]) {
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != -1 && p[match[to]] != -1)) {
                    int curbase = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, curbase, to);
                    mark_path(to, curbase, v);
                    for (int i = 0; i < n; ++i) {
                        if (blossom[base[i]]) {
                            base[i] = curbase;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push_back(i);
                            }
                        }
                    }
                } else if (p[to] == -1) {
                    p[to] = v;
                    if (match[to] == -1) return to;
                    used[match[to]] = 1;
                    q.push_back(match[to]);
                }
            }
        }
        return -1;
    }

    void run() {
        for (int v = 0; v < n; ++v) {
            if (match[v] != -1) continue;
            int u = find_path(v);
            while (u != -1) {
                int pv = p[u], ppv = match[pv];
                match[u] = pv;
                match[pv] = u;
                u = ppv;
            }
        }
    }
};

} // namespace

Matching max_matching_in_edges(int n, const std::vector<MatchEdge>& edges) {
    Blossom b(n, edges);
    b.run();
    Matching out;
    for (int v = 0; v < n; ++v)
        if (b.match[v] > v) out.emplace_back(v, b.match[v]);
    return out;
}

} // namespace pmw
