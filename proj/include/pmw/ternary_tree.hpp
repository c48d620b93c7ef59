#pragma once

#include <cstdint>
#include <vector>

namespace pmw {

// Nodes of a complete rooted ternary tree of height h: (3^(h+1) - 1) / 2.
std::int64_t ternary_node_count(int height);

// Largest height h with ternary_node_count(h) <= x. Requires x >= 1.
int tr(std::int64_t x);

// Complete rooted ternary tree in array layout: root 0, children of v are
// 3v+1, 3v+2, 3v+3; level d occupies ids [(3^d-1)/2, (3^(d+1)-1)/2).
class TernaryTree {
public:
    explicit TernaryTree(int height);

    int height() const { return height_; }
    int num_nodes() const { return num_nodes_; }
    bool is_leaf(int v) const { return 3 * v + 1 >= num_nodes_; }
    int parent(int v) const { return v == 0 ? -1 : (v - 1) / 3; }
    int child(int v, int i) const { return 3 * v + 1 + i; } // i in 0..2
    int depth(int v) const;
    int subtree_height(int v) const { return height_ - depth(v); }

    // Descendants of root_node (inclusive), ascending ids.
    std::vector<int> subtree_nodes(int root_node) const;

    // The unique tree path from u to v, endpoints included.
    std::vector<int> path(int u, int v) const;

    // Tree edges as (parent, child) pairs.
    std::vector<std::pair<int, int>> edges() const;

private:
    int height_ = 0;
    int num_nodes_ = 1;
};

} // namespace pmw
