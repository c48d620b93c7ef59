#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace pmw {

// Undirected graph on dense vertex ids 0..n-1. No self-loops, no parallel edges.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n);

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    int num_edges() const;
    bool has_edge(int u, int v) const;
    void add_edge(int u, int v); // idempotent
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;
    bool has_isolated_vertex() const;
    bool is_connected() const; // vacuously true for the empty graph

    // Edges as (u,v) with u < v, lexicographically sorted.
    std::vector<std::pair<int, int>> edges() const;

    // Neighborhood as a bitmask; requires num_vertices() <= 64.
    std::uint64_t neighbor_mask(int v) const;

private:
    std::vector<std::vector<int>> adj_;
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph star_graph(int leaves);

// Text format: "n m" header, then one "u v" line per edge, 0-based ids.
Graph read_edge_list(std::istream& in);
void write_edge_list(const Graph& g, std::ostream& out);

} // namespace pmw
