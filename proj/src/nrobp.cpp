#include "pmw/nrobp.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>

#include "pmw/errors.hpp"

namespace pmw {

namespace {

VarMask low_bits(int n) { return n >= 64 ? ~VarMask{0} : (VarMask{1} << n) - 1; }

struct Adjacency {
    std::vector<std::vector<int>> out, in;
};

Adjacency adjacency_of(const Nrobp& z) {
    Adjacency a;
    a.out.resize(static_cast<std::size_t>(z.num_nodes));
    a.in.resize(static_cast<std::size_t>(z.num_nodes));
    for (int e = 0; e < static_cast<int>(z.edges.size()); ++e) {
        a.out[z.edges[e].from].push_back(e);
        a.in[z.edges[e].to].push_back(e);
    }
    for (auto& v : a.out)
        std::sort(v.begin(), v.end(), [&](int x, int y) {
            return std::tie(z.edges[x].to, z.edges[x].lit, x) <
                   std::tie(z.edges[y].to, z.edges[y].lit, y);
        });
    for (auto& v : a.in)
        std::sort(v.begin(), v.end(), [&](int x, int y) {
            return std::tie(z.edges[x].from, z.edges[x].lit, x) <
                   std::tie(z.edges[y].from, z.edges[y].lit, y);
        });
    return a;
}

std::vector<int> topo_sort(const Nrobp& z, const std::vector<std::vector<int>>& out) {
    std::vector<int> indeg(static_cast<std::size_t>(z.num_nodes), 0);
    for (const auto& e : z.edges) ++indeg[e.to];
    std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
    for (int v = 0; v < z.num_nodes; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(z.num_nodes));
    while (!ready.empty()) {
        const int v = ready.top();
        ready.pop();
        order.push_back(v);
        for (int ei : out[v])
            if (--indeg[z.edges[ei].to] == 0) ready.push(z.edges[ei].to);
    }
    return order; // shorter than num_nodes iff cyclic
}

// Backward walk inside the non-topo residue until a vertex repeats.
std::vector<int> find_cycle(const Nrobp& z, const Adjacency& adj, const std::vector<char>& in_topo) {
    int start = -1;
    for (int v = 0; v < z.num_nodes; ++v)
        if (!in_topo[v]) {
            start = v;
            break;
        }
    internal_check(start >= 0, "nrobp: cycle reported without residue");
    std::vector<int> walk;
    std::vector<int> at(static_cast<std::size_t>(z.num_nodes), -1);
    int cur = start;
    for (;;) {
        if (at[cur] >= 0) return {walk.begin() + at[cur], walk.end()};
        at[cur] = static_cast<int>(walk.size());
        walk.push_back(cur);
        int nxt = -1;
        for (int ei : adj.in[cur]) {
            const int u = z.edges[ei].from;
            if (!in_topo[u]) {
                nxt = u;
                break;
            }
        }
        internal_check(nxt >= 0, "nrobp: cyclic residue without a residue predecessor");
        cur = nxt;
    }
}

// First-in-edge chain back to the source; only called on acyclic programs.
std::vector<int> plain_path_to(const Nrobp& z, const Adjacency& adj, int u) {
    std::vector<int> rev{u};
    int cur = u;
    while (!adj.in[cur].empty()) {
        cur = z.edges[adj.in[cur][0]].from;
        rev.push_back(cur);
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

} // namespace

ValidationReport validate(const Nrobp& z) {
    ValidationReport r;
    auto issue = [&](std::string what, std::vector<int> wit = {}) {
        r.issues.push_back({std::move(what), std::move(wit)});
    };

    if (z.num_nodes <= 0) {
        issue("program has no vertices");
        return r;
    }
    if (z.num_vars < 0 || z.num_vars > 64) {
        issue("variable count outside 0..64");
        return r;
    }
    if (z.source < 0 || z.source >= z.num_nodes) {
        issue("source id out of range");
        return r;
    }
    if (z.sink < 0 || z.sink >= z.num_nodes) {
        issue("sink id out of range");
        return r;
    }
    for (const auto& e : z.edges) {
        if (e.from < 0 || e.from >= z.num_nodes || e.to < 0 || e.to >= z.num_nodes) {
            issue("edge endpoint out of range");
            return r;
        }
        if (e.from == e.to) {
            issue("self loop", {e.from});
            return r;
        }
        if (e.lit != 0 && lit_var(e.lit) >= z.num_vars) {
            issue("edge literal names an undeclared variable", {e.from, e.to});
            return r;
        }
    }

    const Adjacency adj = adjacency_of(z);

    for (int v = 0; v < z.num_nodes; ++v) {
        if (adj.in[v].empty() && v != z.source)
            issue("vertex other than the source has no incoming edge", {v});
        if (adj.out[v].empty() && v != z.sink)
            issue("vertex other than the sink has no outgoing edge", {v});
    }
    if (!adj.in[z.source].empty()) issue("designated source has an incoming edge", {z.source});
    if (!adj.out[z.sink].empty()) issue("designated sink has an outgoing edge", {z.sink});
    if (!r.issues.empty()) return r;

    const std::vector<int> topo = topo_sort(z, adj.out);
    if (static_cast<int>(topo.size()) < z.num_nodes) {
        std::vector<char> in_topo(static_cast<std::size_t>(z.num_nodes), 0);
        for (int v : topo) in_topo[v] = 1;
        issue("cycle", find_cycle(z, adj, in_topo));
        return r;
    }

    // Uniformity: before-sets must agree across in-edges, grow without repeats,
    // and reach the full variable set at the sink.
    std::vector<VarMask> vb(static_cast<std::size_t>(z.num_nodes), 0);
    for (int v : topo) {
        if (v == z.source) continue;
        bool first = true;
        for (int ei : adj.in[v]) {
            const auto& e = z.edges[ei];
            const VarMask bit = e.lit != 0 ? var_bit(lit_var(e.lit)) : 0;
            if (bit & vb[e.from]) {
                auto wit = plain_path_to(z, adj, e.from);
                wit.push_back(v);
                issue("variable " + std::to_string(lit_var(e.lit)) + " is read twice on a path",
                      std::move(wit));
                return r;
            }
            const VarMask cand = vb[e.from] | bit;
            if (first) {
                vb[v] = cand;
                first = false;
            } else if (cand != vb[v]) {
                issue("paths into vertex " + std::to_string(v) + " read different variable sets",
                      {z.edges[adj.in[v][0]].from, e.from, v});
                return r;
            }
        }
    }
    if (vb[z.sink] != low_bits(z.num_vars)) {
        std::vector<int> wit{z.source};
        int cur = z.source;
        while (!adj.out[cur].empty()) {
            cur = z.edges[adj.out[cur][0]].to;
            wit.push_back(cur);
        }
        for (int x = 0; x < z.num_vars; ++x)
            if (!(vb[z.sink] & var_bit(x))) {
                issue("paths never read variable " + std::to_string(x), std::move(wit));
                break;
            }
    }
    return r;
}

NrobpAnalysis::NrobpAnalysis(const Nrobp& z) : z_(z) {
    const ValidationReport rep = validate(z_);
    if (!rep.valid()) throw PreconditionError("nrobp: " + rep.issues.front().what);
    Adjacency adj = adjacency_of(z_);
    out_ = std::move(adj.out);
    in_ = std::move(adj.in);
    topo_ = topo_sort(z_, out_);

    vb_.assign(static_cast<std::size_t>(z_.num_nodes), 0);
    bneg_.assign(static_cast<std::size_t>(z_.num_nodes), 0);
    for (int v : topo_) {
        if (v == z_.source) continue;
        const auto& head = z_.edges[in_[v][0]];
        vb_[v] = vb_[head.from] | (head.lit != 0 ? var_bit(lit_var(head.lit)) : 0);
        for (int ei : in_[v]) {
            const auto& e = z_.edges[ei];
            bneg_[v] |= bneg_[e.from] | (e.lit < 0 ? var_bit(lit_var(e.lit)) : 0);
        }
    }

    const VarMask all = low_bits(z_.num_vars);
    va_.assign(static_cast<std::size_t>(z_.num_nodes), 0);
    aneg_.assign(static_cast<std::size_t>(z_.num_nodes), 0);
    for (int i = static_cast<int>(topo_.size()) - 1; i >= 0; --i) {
        const int v = topo_[i];
        va_[v] = all & ~vb_[v];
        for (int ei : out_[v]) {
            const auto& e = z_.edges[ei];
            aneg_[v] |= aneg_[e.to] | (e.lit < 0 ? var_bit(lit_var(e.lit)) : 0);
        }
    }
}

mpz_class NrobpAnalysis::path_count() const {
    std::vector<mpz_class> cnt(static_cast<std::size_t>(z_.num_nodes), 0);
    cnt[z_.sink] = 1;
    for (int i = static_cast<int>(topo_.size()) - 1; i >= 0; --i) {
        const int v = topo_[i];
        for (int ei : out_[v]) cnt[v] += cnt[z_.edges[ei].to];
    }
    return cnt[z_.source];
}

std::vector<std::vector<int>> NrobpAnalysis::enumerate_paths(std::size_t path_cap) const {
    if (path_count() > static_cast<unsigned long>(path_cap))
        throw CapExceeded("nrobp: path count exceeds the enumeration cap");
    std::vector<std::vector<int>> paths;
    std::vector<int> cur;
    std::vector<std::pair<int, std::size_t>> st;
    st.emplace_back(z_.source, 0);
    while (!st.empty()) {
        auto& top = st.back();
        const int v = top.first;
        if (v == z_.sink) {
            paths.push_back(cur);
            st.pop_back();
            if (!cur.empty()) cur.pop_back();
            continue;
        }
        if (top.second == out_[v].size()) {
            st.pop_back();
            if (!cur.empty()) cur.pop_back();
            continue;
        }
        const int ei = out_[v][top.second++];
        cur.push_back(ei);
        st.emplace_back(z_.edges[ei].to, 0);
    }
    return paths;
}

namespace {

void check_full_path(const NrobpAnalysis& a, const std::vector<int>& path, const char* op) {
    const Nrobp& z = a.program();
    int v = z.source;
    for (int ei : path) {
        if (ei < 0 || ei >= static_cast<int>(z.edges.size()))
            throw PreconditionError(std::string(op) + ": edge index out of range");
        if (z.edges[ei].from != v)
            throw PreconditionError(std::string(op) + ": edges do not chain from the source");
        v = z.edges[ei].to;
    }
    if (v != z.sink)
        throw PreconditionError(std::string(op) + ": path does not end at the sink");
}

} // namespace

VarMask NrobpAnalysis::path_model(const std::vector<int>& path) const {
    check_full_path(*this, path, "path_model");
    VarMask m = 0;
    for (int ei : path)
        if (z_.edges[ei].lit > 0) m |= var_bit(lit_var(z_.edges[ei].lit));
    return m;
}

std::vector<int> NrobpAnalysis::path_var_order(const std::vector<int>& path) const {
    check_full_path(*this, path, "path_var_order");
    std::vector<int> order;
    for (int ei : path)
        if (z_.edges[ei].lit != 0) order.push_back(lit_var(z_.edges[ei].lit));
    return order;
}

std::vector<int> NrobpAnalysis::path_vertices(const std::vector<int>& path) const {
    check_full_path(*this, path, "path_vertices");
    std::vector<int> verts{z_.source};
    for (int ei : path) verts.push_back(z_.edges[ei].to);
    return verts;
}

ModelSet represented_function(const Nrobp& z, std::size_t path_cap) {
    const NrobpAnalysis a(z);
    const auto paths = a.enumerate_paths(path_cap);
    std::vector<VarMask> models;
    models.reserve(paths.size());
    for (const auto& p : paths) models.push_back(a.path_model(p));
    return make_model_set(low_bits(z.num_vars), std::move(models));
}

Nrobp build_order_nrobp(const ModelSet& f, const std::vector<int>& order) {
    if (f.models.empty()) throw PreconditionError("build_order_nrobp: empty model set");
    const int n = std::popcount(f.vars);
    if (f.vars != low_bits(n))
        throw PreconditionError("build_order_nrobp: variables must be 0..n-1");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    if (static_cast<int>(order.size()) != n)
        throw PreconditionError("build_order_nrobp: order length differs from the variable count");
    for (int v : order) {
        if (v < 0 || v >= n)
            throw PreconditionError("build_order_nrobp: order mentions a foreign variable");
        if (seen[v]) throw PreconditionError("build_order_nrobp: order repeats a variable");
        seen[v] = 1;
    }

    Nrobp z;
    z.num_vars = n;
    z.source = 0;
    int next_id = 1;
    // Layer by layer, one node per distinct residual model list. Model lists
    // stay sorted: filtering on a bit and then clearing it preserves order.
    std::map<std::vector<VarMask>, int> layer{{f.models, 0}};
    for (int l = 0; l < n; ++l) {
        const VarMask b = var_bit(order[l]);
        std::map<std::vector<VarMask>, int> next;
        for (const auto& [models, id] : layer) {
            for (int side = 0; side < 2; ++side) {
                std::vector<VarMask> rest;
                for (VarMask m : models)
                    if (((m & b) != 0) == (side == 1)) rest.push_back(m & ~b);
                if (rest.empty()) continue;
                auto [it, inserted] = next.try_emplace(std::move(rest), next_id);
                if (inserted) ++next_id;
                z.edges.push_back({id, it->second, side == 1 ? pos_lit(order[l]) : neg_lit(order[l])});
            }
        }
        layer = std::move(next);
    }
    internal_check(layer.size() == 1 && layer.begin()->first == std::vector<VarMask>{0},
                   "order nrobp: residuals did not collapse at the last layer");
    z.num_nodes = next_id;
    z.sink = layer.begin()->second;
    return z;
}

bool separates(const NrobpAnalysis& z, int v, VarMask x_set, VarMask y_set) {
    if (v < 0 || v >= z.num_nodes()) throw PreconditionError("separates: vertex out of range");
    const VarMask all = low_bits(z.num_vars());
    if ((x_set | y_set) & ~all)
        throw PreconditionError("separates: set mentions an undeclared variable");
    const VarMask before = z.before_vars(v), after = z.after_vars(v);
    return ((x_set & ~before) == 0 && (y_set & ~after) == 0) ||
           ((y_set & ~before) == 0 && (x_set & ~after) == 0);
}

namespace {

// Some source->u path reading var negatively, as vertex ids.
std::vector<int> neg_before_path(const NrobpAnalysis& a, int u, int var) {
    const Nrobp& z = a.program();
    internal_check((a.before_neg(u) >> var & 1) != 0, "nrobp: negative occurrence missing before");
    std::vector<int> rev{u};
    int cur = u;
    for (;;) {
        int direct = -1, deeper = -1;
        for (int ei : a.in_edges(cur)) {
            const auto& e = z.edges[ei];
            if (direct < 0 && e.lit == neg_lit(var)) direct = e.from;
            if (deeper < 0 && (a.before_neg(e.from) >> var & 1) != 0) deeper = e.from;
        }
        if (direct >= 0) {
            std::vector<int> head{direct};
            int c = direct;
            while (!a.in_edges(c).empty()) {
                c = z.edges[a.in_edges(c)[0]].from;
                head.push_back(c);
            }
            std::reverse(head.begin(), head.end());
            head.insert(head.end(), rev.rbegin(), rev.rend());
            return head;
        }
        internal_check(deeper >= 0, "nrobp: negative occurrence not traceable before");
        rev.push_back(deeper);
        cur = deeper;
    }
}

// Some u->sink path reading var negatively, as vertex ids.
std::vector<int> neg_after_path(const NrobpAnalysis& a, int u, int var) {
    const Nrobp& z = a.program();
    internal_check((a.after_neg(u) >> var & 1) != 0, "nrobp: negative occurrence missing after");
    std::vector<int> fwd{u};
    int cur = u;
    for (;;) {
        int direct = -1, deeper = -1;
        for (int ei : a.out_edges(cur)) {
            const auto& e = z.edges[ei];
            if (direct < 0 && e.lit == neg_lit(var)) direct = e.to;
            if (deeper < 0 && (a.after_neg(e.to) >> var & 1) != 0) deeper = e.to;
        }
        if (direct >= 0) {
            fwd.push_back(direct);
            int c = direct;
            while (!a.out_edges(c).empty()) {
                c = z.edges[a.out_edges(c)[0]].to;
                fwd.push_back(c);
            }
            return fwd;
        }
        internal_check(deeper >= 0, "nrobp: negative occurrence not traceable after");
        fwd.push_back(deeper);
        cur = deeper;
    }
}

} // namespace

std::vector<int> fixed_set(const NrobpAnalysis& z, int u, const Matching& m) {
    if (u < 0 || u >= z.num_nodes()) throw PreconditionError("fixed_set: vertex out of range");
    const VarMask before = z.before_vars(u), after = z.after_vars(u);
    VarMask used = 0;
    std::vector<int> out;
    for (const auto& [x, y] : m) {
        if (x < 0 || y < 0 || x >= z.num_vars() || y >= z.num_vars())
            throw PreconditionError("fixed_set: matched variable out of range");
        if (x == y || (used & var_bit(x)) != 0 || (used & var_bit(y)) != 0)
            throw PreconditionError("fixed_set: edges share a vertex");
        used |= var_bit(x) | var_bit(y);
        int bx, ax;
        if ((before >> x & 1) != 0 && (after >> y & 1) != 0) {
            bx = x;
            ax = y;
        } else if ((before >> y & 1) != 0 && (after >> x & 1) != 0) {
            bx = y;
            ax = x;
        } else {
            throw PreconditionError("fixed_set: matching edge is not separated by the vertex");
        }
        if ((z.before_neg(u) >> bx & 1) == 0) {
            out.push_back(bx); // always read positively before u
            continue;
        }
        if ((z.after_neg(u) >> ax & 1) == 0) {
            out.push_back(ax);
            continue;
        }
        // Both ends falsifiable around u: the combined path is a represented
        // model with the matched edge's clause false.
        auto wit = neg_before_path(z, u, bx);
        const auto tail = neg_after_path(z, u, ax);
        wit.insert(wit.end(), tail.begin() + 1, tail.end());
        std::string msg = "fixed_set: a represented model sets " + std::to_string(bx) + " and " +
                          std::to_string(ax) + " to 0; witness path";
        for (int v : wit) msg += ' ' + std::to_string(v);
        throw PreconditionError(msg);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Nrobp read_nrobp(std::istream& is) {
    std::string tag;
    Nrobp z;
    long long ne = -1;
    if (!(is >> tag >> z.num_nodes >> ne >> z.source >> z.sink >> z.num_vars) || tag != "nrobp")
        throw IoError("nrobp: malformed header");
    if (ne < 0) throw IoError("nrobp: negative edge count");
    std::string line;
    std::getline(is, line); // rest of the header line
    while (static_cast<long long>(z.edges.size()) < ne && std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        NrobpEdge e;
        if (!(ls >> e.from >> e.to)) throw IoError("nrobp: malformed edge line");
        int lit = 0;
        if (ls >> lit) {
            if (lit == 0) throw IoError("nrobp: zero literal");
            e.lit = lit;
        }
        z.edges.push_back(e);
    }
    if (static_cast<long long>(z.edges.size()) != ne) throw IoError("nrobp: missing edges");
    return z;
}

void write_nrobp(std::ostream& os, const Nrobp& z) {
    os << "nrobp " << z.num_nodes << ' ' << z.edges.size() << ' ' << z.source << ' ' << z.sink
       << ' ' << z.num_vars << '\n';
    for (const auto& e : z.edges) {
        os << e.from << ' ' << e.to;
        if (e.lit != 0) os << ' ' << e.lit;
        os << '\n';
    }
}

} // namespace pmw
