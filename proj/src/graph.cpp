#include "pmw/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "pmw/errors.hpp"

namespace pmw {

Graph::Graph(int n) {
    if (n < 0) throw PreconditionError("graph: vertex count must be nonnegative");
    adj_.resize(n);
}

int Graph::num_edges() const {
    std::size_t deg_sum = 0;
    for (const auto& a : adj_) deg_sum += a.size();
    return static_cast<int>(deg_sum / 2);
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= num_vertices() || v >= num_vertices()) return false;
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
}

void Graph::add_edge(int u, int v) {
    const int n = num_vertices();
    if (u < 0 || v < 0 || u >= n || v >= n) throw PreconditionError("add_edge: vertex id out of range");
    if (u == v) throw PreconditionError("add_edge: self-loops are not allowed");
    if (has_edge(u, v)) return;
    adj_[u].insert(std::lower_bound(adj_[u].begin(), adj_[u].end(), v), v);
    adj_[v].insert(std::lower_bound(adj_[v].begin(), adj_[v].end(), u), u);
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

bool Graph::has_isolated_vertex() const {
    for (const auto& a : adj_)
        if (a.empty()) return true;
    return false;
}

bool Graph::is_connected() const {
    const int n = num_vertices();
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adj_[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> es;
    es.reserve(num_edges());
    for (int u = 0; u < num_vertices(); ++u)
        for (int v : adj_[u])
            if (u < v) es.emplace_back(u, v);
    return es;
}

std::uint64_t Graph::neighbor_mask(int v) const {
    if (num_vertices() > 64) throw PreconditionError("neighbor_mask: graph has more than 64 vertices");
    std::uint64_t m = 0;
    for (int w : adj_[v]) m |= std::uint64_t{1} << w;
    return m;
}

Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

Graph cycle_graph(int n) {
    if (n < 3) throw PreconditionError("cycle_graph: need at least 3 vertices");
    Graph g = path_graph(n);
    g.add_edge(n - 1, 0);
    return g;
}

Graph complete_graph(int n) {
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
    return g;
}

Graph star_graph(int leaves) {
    Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

Graph read_edge_list(std::istream& in) {
    int n = -1, m = -1;
    if (!(in >> n >> m)) throw IoError("edge list: missing 'n m' header");
    if (n < 0 || m < 0) throw IoError("edge list: negative counts in header");
    Graph g(n);
    for (int i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw IoError("edge list: truncated edge section");
        g.add_edge(u, v);
    }
    return g;
}

void write_edge_list(const Graph& g, std::ostream& out) {
    auto es = g.edges();
    out << g.num_vertices() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) out << u << ' ' << v << '\n';
}

} // namespace pmw
