#include "pmw/tree_decomposition.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "pmw/errors.hpp"

namespace pmw {

int TreeDecomposition::width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
}

TdCheck verify_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
    auto fail = [](const std::string& why) { return TdCheck{false, why}; };
    const int nb = static_cast<int>(td.bags.size());
    if (nb == 0) return fail("no bags");
    for (auto [a, b] : td.edges)
        if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) return fail("bad bag edge");
    if (static_cast<int>(td.edges.size()) != nb - 1) return fail("bag tree is not a tree (edge count)");

    // Bag tree connectivity.
    std::vector<std::vector<int>> badj(nb);
    for (auto [a, b] : td.edges) {
        badj[a].push_back(b);
        badj[b].push_back(a);
    }
    {
        std::vector<char> seen(nb, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : badj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    stack.push_back(y);
                }
        }
        if (cnt != nb) return fail("bag tree is not connected");
    }

    const int n = g.num_vertices();
    std::vector<std::vector<int>> bags_of(n);
    for (int i = 0; i < nb; ++i)
        for (int v : td.bags[i]) {
            if (v < 0 || v >= n) return fail("bag contains unknown vertex");
            bags_of[v].push_back(i);
        }
    for (int v = 0; v < n; ++v)
        if (bags_of[v].empty()) return fail("vertex " + std::to_string(v) + " is in no bag");

    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (int i : bags_of[u]) {
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
                covered = true;
                break;
            }
        }
        if (!covered)
            return fail("edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag");
    }

    // Connectivity of each vertex's bag set within the bag tree.
    for (int v = 0; v < n; ++v) {
        std::vector<char> in_set(nb, 0);
        for (int i : bags_of[v]) in_set[i] = 1;
        std::vector<char> seen(nb, 0);
        std::vector<int> stack{bags_of[v][0]};
        seen[bags_of[v][0]] = 1;
        std::size_t cnt = 1;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : badj[x])
                if (in_set[y] && !seen[y]) {
                    seen[y] = 1;
                    ++cnt;
                    stack.push_back(y);
                }
        }
        if (cnt != bags_of[v].size())
            return fail("bags of vertex " + std::to_string(v) + " are not connected");
    }
    return {};
}

TreeDecomposition gk_tree_decomposition(const ProductGraph& p) {
    const auto& t = p.tree();
    TreeDecomposition td;
    td.bags.resize(t.num_nodes());
    for (int node = 0; node < t.num_nodes(); ++node) {
        std::vector<int> bag = p.copy_vertices(node);
        if (node != 0) {
            auto up = p.copy_vertices(t.parent(node));
            bag.insert(bag.end(), up.begin(), up.end());
        }
        std::sort(bag.begin(), bag.end());
        td.bags[node] = std::move(bag);
        if (node != 0) td.edges.emplace_back(t.parent(node), node);
    }
    return td;
}

void write_td(const TreeDecomposition& td, int num_graph_vertices, std::ostream& out) {
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << num_graph_vertices << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << 'b' << ' ' << i + 1;
        for (int v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.edges) out << a + 1 << ' ' << b + 1 << '\n';
}

TreeDecomposition read_td(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    long nb = -1;
    bool seen_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        if (line[0] == 's') {
            std::string s, tdtok;
            long wplus1, n;
            if (!(ls >> s >> tdtok >> nb >> wplus1 >> n) || tdtok != "td")
                throw IoError("td: malformed solution header");
            td.bags.resize(nb);
            seen_header = true;
        } else if (line[0] == 'b') {
            if (!seen_header) throw IoError("td: bag line before header");
            char btok;
            long id;
            ls >> btok >> id;
            if (id < 1 || id > nb) throw IoError("td: bag id out of range");
            int v;
            while (ls >> v) td.bags[id - 1].push_back(v - 1);
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
        } else {
            if (!seen_header) throw IoError("td: edge line before header");
            long a, b;
            std::istringstream es(line);
            if (!(es >> a >> b)) throw IoError("td: malformed edge line");
            td.edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
        }
    }
    if (!seen_header) throw IoError("td: missing header");
    return td;
}

} // namespace pmw
