#include "pmw/product_graph.hpp"

#include <algorithm>

#include "pmw/errors.hpp"

namespace pmw {

namespace {

Graph materialize(const TernaryTree& t, const Graph& h) {
    const int p = h.num_vertices();
    Graph g(t.num_nodes() * p);
    for (int node = 0; node < t.num_nodes(); ++node)
        for (auto [i, j] : h.edges()) g.add_edge(node * p + i, node * p + j);
    for (auto [a, b] : t.edges())
        for (int i = 0; i < p; ++i) g.add_edge(a * p + i, b * p + i);
    return g;
}

} // namespace

ProductGraph::ProductGraph(TernaryTree tree, Graph pattern)
    : tree_(tree), pattern_(std::move(pattern)), materialized_(materialize(tree_, pattern_)) {
    if (pattern_.num_vertices() == 0) throw PreconditionError("product graph: pattern must be nonempty");
}

std::vector<int> ProductGraph::copy_vertices(int node) const {
    std::vector<int> out(pattern_.num_vertices());
    for (int i = 0; i < pattern_.num_vertices(); ++i) out[i] = vertex_id(node, i);
    return out;
}

Occupancy occupied_set(const ProductGraph& p, const std::vector<int>& v_set) {
    std::vector<int> all(p.tree().num_nodes());
    for (int i = 0; i < p.tree().num_nodes(); ++i) all[i] = i;
    return occupied_set_in_region(p, all, v_set);
}

Occupancy occupied_set_in_region(const ProductGraph& p, const std::vector<int>& region,
                                 const std::vector<int>& v_set) {
    std::vector<int> per_node(p.tree().num_nodes(), 0);
    for (int vid : v_set) {
        if (vid < 0 || vid >= p.num_vertices())
            throw PreconditionError("occupied_set: vertex id out of range");
        per_node[p.tree_node(vid)] += 1;
    }
    Occupancy oc;
    for (int node : region) {
        if (per_node[node] > 0) {
            oc.nodes.push_back(node);
            oc.complete.push_back(per_node[node] == p.pattern_size() ? 1 : 0);
        }
    }
    std::vector<int> idx(oc.nodes.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return oc.nodes[a] < oc.nodes[b]; });
    Occupancy sorted;
    for (int i : idx) {
        sorted.nodes.push_back(oc.nodes[i]);
        sorted.complete.push_back(oc.complete[i]);
    }
    return sorted;
}

RolePartition RolePartition::from_sets(int total_vertices, const std::vector<int>& first,
                                       const std::vector<int>& second) {
    RolePartition rp;
    rp.role.assign(total_vertices, Role::Outside);
    for (int v : first) {
        if (v < 0 || v >= total_vertices) throw PreconditionError("role partition: vertex id out of range");
        rp.role[v] = Role::First;
    }
    for (int v : second) {
        if (v < 0 || v >= total_vertices) throw PreconditionError("role partition: vertex id out of range");
        if (rp.role[v] == Role::First) throw PreconditionError("role partition: parts are not disjoint");
        rp.role[v] = Role::Second;
    }
    return rp;
}

std::vector<int> RolePartition::members(Role r) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(role.size()); ++v)
        if (role[v] == r) out.push_back(v);
    return out;
}

std::vector<int> homogeneous_nodes(const ProductGraph& p, const std::vector<int>& region,
                                   const RolePartition& parts) {
    std::vector<int> out;
    for (int node : region) {
        Role r = parts(p.vertex_id(node, 0));
        bool homog = true;
        for (int i = 1; i < p.pattern_size(); ++i) {
            if (parts(p.vertex_id(node, i)) != r) {
                homog = false;
                break;
            }
        }
        if (homog) out.push_back(node);
    }
    return out;
}

ProductGraph build_gk_instance(int k, int height) {
    if (k < 4) throw PreconditionError("gk instance: k must be at least 4");
    const int half = 2 * (k / 4); // path length k/2 when 4 | k, else the floor fallback
    return ProductGraph(TernaryTree(height), path_graph(half));
}

} // namespace pmw
