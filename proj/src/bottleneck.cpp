#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <utility>

#include "pmw/errors.hpp"
#include "pmw/matching_width.hpp"
#include "pmw/nrobp.hpp"

namespace pmw {

namespace {

// Maximum matchings across vertex-set cuts, memoized on the prefix mask.
// Paths of one program revisit the same prefixes constantly.
struct CutOracle {
    const Graph& g;
    std::map<VarMask, Matching> memo;

    const Matching& across(VarMask prefix) {
        auto it = memo.find(prefix);
        if (it == memo.end()) {
            std::vector<int> a_set;
            for (int v = 0; v < g.num_vertices(); ++v)
                if (prefix >> v & 1) a_set.push_back(v);
            it = memo.emplace(prefix, max_matching_across_cut(g, a_set)).first;
        }
        return it->second;
    }
};

// Default split: s = ceil(sqrt(n)) per block; when n is not a perfect square
// the last two would-be blocks merge so none is shorter than s. Explicit q:
// balanced sizes, larger blocks first.
std::vector<std::pair<std::size_t, std::size_t>> block_ranges(int n, int q) {
    if (n <= 0) throw PreconditionError("characteristic_tuple: no variables to partition");
    if (q < 0 || q > n) throw PreconditionError("characteristic_tuple: block count out of range");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    if (q == 0) {
        int s = 0;
        while (s * s < n) ++s;
        // Perfect square: s blocks of s. Otherwise chunk by s and merge the
        // last two chunks so no block is shorter than s.
        const int blocks = s * s == n ? s : std::max(1, (n + s - 1) / s - 1);
        for (int i = 0; i < blocks - 1; ++i)
            out.emplace_back(static_cast<std::size_t>(i) * s, static_cast<std::size_t>(i + 1) * s);
        out.emplace_back(static_cast<std::size_t>(blocks - 1) * s, static_cast<std::size_t>(n));
        return out;
    }
    const int base = n / q, extra = n % q;
    std::size_t at = 0;
    for (int i = 0; i < q; ++i) {
        const std::size_t len = static_cast<std::size_t>(base + (i < extra ? 1 : 0));
        out.emplace_back(at, at + len);
        at += len;
    }
    return out;
}

struct PathFrame {
    std::vector<int> verts;        // v_0..v_m
    std::vector<int> vars;         // variables in read order
    std::vector<int> labeled_head; // vertex right after the j-th labeled edge
    std::vector<int> pos_of;       // variable -> read position
};

PathFrame frame_of(const NrobpAnalysis& a, const std::vector<int>& path) {
    PathFrame f;
    f.verts = a.path_vertices(path);
    f.pos_of.assign(static_cast<std::size_t>(a.num_vars()), -1);
    const auto& edges = a.program().edges;
    std::size_t vi = 0;
    for (int ei : path) {
        ++vi;
        if (edges[ei].lit == 0) continue;
        const int var = lit_var(edges[ei].lit);
        f.pos_of[var] = static_cast<int>(f.vars.size());
        f.vars.push_back(var);
        f.labeled_head.push_back(f.verts[vi]);
    }
    return f;
}

CharacteristicTuple tuple_for_path(const NrobpAnalysis& z, const std::vector<int>& path, int q,
                                   CutOracle& oracle) {
    const PathFrame f = frame_of(z, path);
    internal_check(static_cast<int>(f.vars.size()) == z.num_vars(),
                   "characteristic tuple: path does not read every variable");
    const auto ranges = block_ranges(z.num_vars(), q);

    // Path vertex right after `labeled_count` labeled edges.
    auto head_vertex = [&](std::size_t labeled_count) {
        return labeled_count == 0 ? f.verts.front() : f.labeled_head[labeled_count - 1];
    };

    CharacteristicTuple t;
    for (const auto& [b, e] : ranges) {
        TupleBlock blk;
        blk.begin = b;
        blk.end = e;

        // Best cut matching between a block prefix and the rest of the graph;
        // ties keep the shortest prefix.
        VarMask pm = 0;
        std::size_t best_len = 0;
        for (std::size_t len = 0; len <= e - b; ++len) {
            if (len > 0) pm |= var_bit(f.vars[b + len - 1]);
            const Matching& mm = oracle.across(pm);
            if (mm.size() > blk.m_full.size()) {
                blk.m_full = mm;
                best_len = len;
            }
        }
        blk.prefix_len = best_len;

        VarMask prefix_mask = 0;
        for (std::size_t j = 0; j < best_len; ++j) prefix_mask |= var_bit(f.vars[b + j]);

        int counts[3] = {0, 0, 0};
        std::vector<int> loc(blk.m_full.size(), 0);
        for (std::size_t i = 0; i < blk.m_full.size(); ++i) {
            const auto [x, y] = blk.m_full[i];
            const int far = (prefix_mask >> x & 1) != 0 ? y : x;
            internal_check((prefix_mask >> far & 1) == 0,
                           "characteristic tuple: both matched ends in the block prefix");
            const auto fp = static_cast<std::size_t>(f.pos_of[far]);
            internal_check(f.pos_of[far] >= 0, "characteristic tuple: far end off the path");
            int l;
            if (fp < b)
                l = 1;
            else if (fp < b + best_len)
                l = -1;
            else if (fp < e)
                l = 0;
            else
                l = 2;
            internal_check(l >= 0, "characteristic tuple: far end inside the block prefix");
            loc[i] = l;
            ++counts[l];
        }
        int popular = 0;
        for (int l = 1; l < 3; ++l)
            if (counts[l] > counts[popular]) popular = l;
        blk.location = popular;
        for (std::size_t i = 0; i < blk.m_full.size(); ++i)
            if (loc[i] == popular) blk.m.push_back(blk.m_full[i]);

        switch (popular) {
            case 0: blk.vertex = head_vertex(b + best_len); break; // prefix end
            case 1: blk.vertex = head_vertex(b); break;            // block start
            default: blk.vertex = head_vertex(e); break;           // block end
        }
        blk.u_set = fixed_set(z, blk.vertex, blk.m);
        t.blocks.push_back(std::move(blk));
    }

    std::map<MatchEdge, int> mult;
    std::set<int> uu;
    for (const auto& blk : t.blocks) {
        for (const auto& [x, y] : blk.m) ++mult[{std::min(x, y), std::max(x, y)}];
        uu.insert(blk.u_set.begin(), blk.u_set.end());
    }
    t.u_set.assign(uu.begin(), uu.end());
    for (const auto& [edge, k] : mult) {
        t.m_union.push_back(edge);
        t.max_edge_multiplicity = std::max(t.max_edge_multiplicity, k);
    }
    return t;
}

} // namespace

std::vector<int> CharacteristicTuple::components() const {
    std::vector<int> out;
    out.reserve(blocks.size());
    for (const auto& b : blocks) out.push_back(b.vertex);
    return out;
}

CharacteristicTuple characteristic_tuple(const NrobpAnalysis& z, const Graph& g,
                                         const std::vector<int>& path, int q) {
    if (z.num_vars() != g.num_vertices())
        throw PreconditionError("characteristic_tuple: variable and vertex counts differ");
    CutOracle oracle{g, {}};
    return tuple_for_path(z, path, q, oracle);
}

SingleBottleneckReport single_bottleneck(const Nrobp& z, const Graph& g, std::size_t path_cap) {
    const NrobpAnalysis a(z);
    if (a.num_vars() != g.num_vertices())
        throw PreconditionError("single_bottleneck: variable and vertex counts differ");
    const Cnf phi = phi_of_graph(g);
    const auto paths = a.enumerate_paths(path_cap);

    SingleBottleneckReport rep;
    rep.path_count = a.path_count();
    {
        std::vector<VarMask> ms;
        ms.reserve(paths.size());
        for (const auto& p : paths) ms.push_back(a.path_model(p));
        rep.f = make_model_set(a.num_vars() >= 64 ? ~VarMask{0}
                                                  : (VarMask{1} << a.num_vars()) - 1,
                               std::move(ms));
    }
    for (VarMask m : rep.f.models)
        if (!satisfies(phi, m))
            throw PreconditionError("single_bottleneck: a represented model falsifies an edge clause");

    std::vector<int> all_vars(static_cast<std::size_t>(g.num_vertices()));
    std::iota(all_vars.begin(), all_vars.end(), 0);
    std::map<std::vector<int>, WitnessingMatching> by_order;
    std::vector<char> seen(static_cast<std::size_t>(z.num_nodes), 0);
    for (const auto& p : paths) {
        auto order = a.path_var_order(p);
        auto it = by_order.find(order);
        if (it == by_order.end()) {
            WitnessingMatching wit = witnessing_matching_exact(g, all_vars, order);
            it = by_order.emplace(std::move(order), std::move(wit)).first;
        }
        const WitnessingMatching& w = it->second;

        int av = z.source;
        if (w.split > 0) {
            int count = 0;
            for (int ei : p) {
                const auto& e = z.edges[ei];
                if (e.lit == 0) continue;
                if (++count == w.split) {
                    av = e.to;
                    break;
                }
            }
        }
        if (seen[av]) continue;
        seen[av] = 1;

        BottleneckCut cut;
        cut.vertex = av;
        cut.split = w.split;
        cut.m = w.m;
        cut.u_set = fixed_set(a, av, w.m);
        VarMask um = 0;
        for (int v : cut.u_set) um |= var_bit(v);
        unsigned long cov = 0;
        for (VarMask m : rep.f.models)
            if ((m & um) == um) ++cov;
        cut.covered = cov;
        rep.cuts.push_back(std::move(cut));
    }

    std::vector<VarMask> cut_masks;
    cut_masks.reserve(rep.cuts.size());
    for (const auto& c : rep.cuts) {
        VarMask um = 0;
        for (int v : c.u_set) um |= var_bit(v);
        cut_masks.push_back(um);
    }
    rep.covering = true;
    for (VarMask m : rep.f.models) {
        bool hit = false;
        for (VarMask um : cut_masks)
            if ((m & um) == um) {
                hit = true;
                break;
            }
        if (!hit) {
            rep.covering = false;
            break;
        }
    }
    return rep;
}

BottleneckCensus bottleneck_census(const Nrobp& z, const Graph& g, int q, std::size_t path_cap) {
    const NrobpAnalysis a(z);
    if (a.num_vars() != g.num_vertices())
        throw PreconditionError("bottleneck_census: variable and vertex counts differ");
    const Cnf phi = phi_of_graph(g);
    const auto paths = a.enumerate_paths(path_cap);

    BottleneckCensus c;
    c.path_count = a.path_count();
    std::vector<VarMask> path_model(paths.size(), 0);
    std::set<VarMask> model_set;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        path_model[i] = a.path_model(paths[i]);
        if (!satisfies(phi, path_model[i]))
            throw PreconditionError("bottleneck_census: a represented model falsifies an edge clause");
        model_set.insert(path_model[i]);
    }
    c.model_count = model_set.size();

    CutOracle oracle{g, {}};
    std::map<std::vector<int>, std::size_t> row_of;
    c.cover_bound = true;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        const CharacteristicTuple t = tuple_for_path(a, paths[i], q, oracle);
        if (i == 0)
            c.q = static_cast<int>(t.blocks.size());
        else
            internal_check(static_cast<int>(t.blocks.size()) == c.q,
                           "census: inconsistent block count across paths");
        c.max_edge_multiplicity = std::max(c.max_edge_multiplicity, t.max_edge_multiplicity);
        if (7 * t.u_set.size() < t.m_union.size()) c.cover_bound = false;
        auto comps = t.components();
        auto [it, inserted] = row_of.try_emplace(std::move(comps), c.tuples.size());
        if (inserted) c.tuples.push_back({t.components(), t.u_set, 0});
    }

    // Model sets per tuple: all paths through every component vertex, tracked
    // with per-vertex path bitsets.
    std::map<int, std::size_t> tracked;
    for (const auto& row : c.tuples)
        for (int v : row.components) tracked.try_emplace(v, tracked.size());
    const std::size_t words = paths.size() / 64 + 1;
    std::vector<std::vector<std::uint64_t>> bits(tracked.size(),
                                                 std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < paths.size(); ++i)
        for (int v : a.path_vertices(paths[i]))
            if (auto it = tracked.find(v); it != tracked.end())
                bits[it->second][i / 64] |= std::uint64_t{1} << (i % 64);

    std::set<VarMask> covered;
    for (auto& row : c.tuples) {
        std::vector<std::uint64_t> acc = bits[tracked.at(row.components.front())];
        for (std::size_t j = 1; j < row.components.size(); ++j) {
            const auto& other = bits[tracked.at(row.components[j])];
            for (std::size_t w = 0; w < words; ++w) acc[w] &= other[w];
        }
        std::set<VarMask> fa;
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = acc[w];
            while (word != 0) {
                const int b = std::countr_zero(word);
                word &= word - 1;
                fa.insert(path_model[w * 64 + static_cast<std::size_t>(b)]);
            }
        }
        row.f_a = static_cast<unsigned long>(fa.size());
        c.max_f_a = std::max(c.max_f_a, fa.size());
        covered.insert(fa.begin(), fa.end());
    }
    c.covering = covered.size() == c.model_count;

    c.b_sets.assign(static_cast<std::size_t>(c.q), {});
    for (int i = 0; i < c.q; ++i) {
        std::set<int> bi;
        for (const auto& row : c.tuples) bi.insert(row.components[i]);
        c.b_sets[i].assign(bi.begin(), bi.end());
    }
    c.b_product = 1;
    c.mu = 0;
    for (const auto& bi : c.b_sets) {
        c.b_product *= static_cast<unsigned long>(bi.size());
        c.mu = std::max(c.mu, bi.size());
    }
    mpz_ui_pow_ui(c.mu_pow_q.get_mpz_t(), static_cast<unsigned long>(c.mu),
                  static_cast<unsigned long>(c.q));
    c.eq21 = mpz_class(static_cast<unsigned long>(c.model_count)) <=
             mpz_class(static_cast<unsigned long>(c.max_f_a)) *
                 static_cast<unsigned long>(c.tuples.size());
    c.eq23 = mpz_class(static_cast<unsigned long>(c.tuples.size())) <= c.b_product &&
             c.b_product <= c.mu_pow_q;
    return c;
}

void write_census_csv(std::ostream& os, const BottleneckCensus& c) {
    os << "row,components,f_a,u_size,b_sizes,mu\n";
    for (const auto& row : c.tuples) {
        os << "tuple,";
        for (std::size_t i = 0; i < row.components.size(); ++i)
            os << (i != 0 ? " " : "") << row.components[i];
        os << ',' << row.f_a << ',' << row.u_set.size() << ",,\n";
    }
    os << "summary,,,,";
    for (std::size_t i = 0; i < c.b_sets.size(); ++i)
        os << (i != 0 ? " " : "") << c.b_sets[i].size();
    os << ',' << c.mu << '\n';
}

} // namespace pmw
