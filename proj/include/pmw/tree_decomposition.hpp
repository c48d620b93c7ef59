#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pmw/graph.hpp"
#include "pmw/product_graph.hpp"

namespace pmw {

struct TreeDecomposition {
    std::vector<std::vector<int>> bags;       // sorted vertex lists
    std::vector<std::pair<int, int>> edges;   // bag indices, 0-based
    int width() const;
};

struct TdCheck {
    bool ok = true;
    std::string reason;
};

// Definition-level validity: bags cover vertices and edges, and the bags
// containing any one vertex induce a connected subtree.
TdCheck verify_tree_decomposition(const Graph& g, const TreeDecomposition& td);

// Width-(2|V(H)|-1) decomposition of a product instance: the root bag is the
// root copy, every other node's bag is its own copy plus its parent's copy.
TreeDecomposition gk_tree_decomposition(const ProductGraph& p);

// PACE-style .td text: "s td <#bags> <width+1> <n>", "b <id> <v...>" lines with
// 1-based bag ids and vertex names, then bag-id pairs. "c" lines are comments.
void write_td(const TreeDecomposition& td, int num_graph_vertices, std::ostream& out);
TreeDecomposition read_td(std::istream& in);

} // namespace pmw
