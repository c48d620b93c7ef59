#include "pmw/ternary_tree.hpp"

#include <algorithm>

#include "pmw/errors.hpp"

namespace pmw {

std::int64_t ternary_node_count(int height) {
    if (height < 0) throw PreconditionError("ternary_node_count: height must be nonnegative");
    if (height > 38) throw PreconditionError("ternary_node_count: height too large for 64-bit count");
    std::int64_t p = 1;
    for (int i = 0; i <= height; ++i) p *= 3;
    return (p - 1) / 2;
}

int tr(std::int64_t x) {
    if (x < 1) throw PreconditionError("tr: argument must be at least 1");
    int h = 0;
    while (h < 38 && ternary_node_count(h + 1) <= x) ++h;
    return h;
}

TernaryTree::TernaryTree(int height) : height_(height) {
    if (height < 0) throw PreconditionError("ternary tree: height must be nonnegative");
    if (height > 18) throw PreconditionError("ternary tree: height too large to materialize");
    num_nodes_ = static_cast<int>(ternary_node_count(height));
}

int TernaryTree::depth(int v) const {
    int d = 0;
    while (v != 0) {
        v = (v - 1) / 3;
        ++d;
    }
    return d;
}

std::vector<int> TernaryTree::subtree_nodes(int root_node) const {
    std::vector<int> out;
    std::vector<int> stack{root_node};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        out.push_back(v);
        for (int i = 0; i < 3; ++i) {
            int c = child(v, i);
            if (c < num_nodes_) stack.push_back(c);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> TernaryTree::path(int u, int v) const {
    std::vector<int> from_u{u}, from_v{v};
    int a = u, b = v;
    int da = depth(a), db = depth(b);
    while (da > db) {
        a = parent(a);
        from_u.push_back(a);
        --da;
    }
    while (db > da) {
        b = parent(b);
        from_v.push_back(b);
        --db;
    }
    while (a != b) {
        a = parent(a);
        b = parent(b);
        from_u.push_back(a);
        from_v.push_back(b);
    }
    from_v.pop_back(); // shared ancestor already in from_u
    from_u.insert(from_u.end(), from_v.rbegin(), from_v.rend());
    return from_u;
}

std::vector<std::pair<int, int>> TernaryTree::edges() const {
    std::vector<std::pair<int, int>> es;
    for (int v = 1; v < num_nodes_; ++v) es.emplace_back(parent(v), v);
    return es;
}

} // namespace pmw
