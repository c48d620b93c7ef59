#pragma once

#include <vector>

#include "pmw/graph.hpp"
#include "pmw/ternary_tree.hpp"

namespace pmw {

// Graph made of one copy of a pattern graph H per tree node, plus
// index-aligned edges between copies at tree-adjacent nodes.
// Product vertex (node, i) maps to the dense id node*|V(H)| + i.
class ProductGraph {
public:
    ProductGraph(TernaryTree tree, Graph pattern);

    const TernaryTree& tree() const { return tree_; }
    const Graph& pattern() const { return pattern_; }
    int pattern_size() const { return pattern_.num_vertices(); }
    int num_vertices() const { return tree_.num_nodes() * pattern_.num_vertices(); }

    int vertex_id(int node, int i) const { return node * pattern_.num_vertices() + i; }
    int tree_node(int vid) const { return vid / pattern_.num_vertices(); }
    int pattern_index(int vid) const { return vid % pattern_.num_vertices(); }

    // Product vertex ids of the copy at a tree node, ascending.
    std::vector<int> copy_vertices(int node) const;

    const Graph& as_graph() const { return materialized_; }

private:
    TernaryTree tree_;
    Graph pattern_;
    Graph materialized_;
};

// Tree nodes whose copy meets V, with a per-node flag for copies fully inside V.
struct Occupancy {
    std::vector<int> nodes;      // ascending
    std::vector<char> complete;  // aligned with nodes
    bool is_complete(int idx) const { return complete[idx] != 0; }
};

Occupancy occupied_set(const ProductGraph& p, const std::vector<int>& v_set);

// Within a region (tree-node subset), occupancy restricted to the region's copies.
Occupancy occupied_set_in_region(const ProductGraph& p, const std::vector<int>& region,
                                 const std::vector<int>& v_set);

enum class Role : unsigned char { Outside = 0, First = 1, Second = 2 };

// Assigns each product vertex to the first part, the second part, or neither.
struct RolePartition {
    std::vector<Role> role;

    static RolePartition from_sets(int total_vertices, const std::vector<int>& first,
                                   const std::vector<int>& second);
    Role operator()(int vid) const { return role[vid]; }
    std::vector<int> members(Role r) const;
};

// Tree nodes (within the region) whose whole copy carries a single role.
std::vector<int> homogeneous_nodes(const ProductGraph& p, const std::vector<int>& region,
                                   const RolePartition& parts);

// Benchmark instance: complete ternary tree of the given height, pattern a path
// with 2*floor(k/4) vertices. Requires k >= 4. Max degree is at most 6.
ProductGraph build_gk_instance(int k, int height);

} // namespace pmw
