#include "pmw/cnf.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pmw/errors.hpp"

namespace pmw {

namespace {

constexpr int kMaskBits = 64;

VarMask all_vars_mask(int n) {
    return n >= kMaskBits ? ~VarMask{0} : (VarMask{1} << n) - 1;
}

void check_mask_range(int num_vars, const char* op) {
    if (num_vars > kMaskBits)
        throw CapExceeded(std::string(op) + ": more than 64 variables");
}

} // namespace

LiteralSet make_literal_set(const std::vector<int>& lits) {
    LiteralSet s;
    for (int lit : lits) {
        if (lit == 0) throw PreconditionError("literal set: zero literal");
        const int v = lit_var(lit);
        if (v >= kMaskBits) throw PreconditionError("literal set: variable id beyond mask range");
        if (s.vars & var_bit(v))
            throw PreconditionError("literal set: variable occurs twice");
        s.vars |= var_bit(v);
        if (lit_positive(lit)) s.pos |= var_bit(v);
    }
    return s;
}

std::vector<int> literals_of(const LiteralSet& s) {
    std::vector<int> out;
    for (int v = 0; v < kMaskBits; ++v)
        if (s.vars & var_bit(v)) out.push_back(s.pos & var_bit(v) ? pos_lit(v) : neg_lit(v));
    return out;
}

LiteralSet project(const LiteralSet& s, VarMask onto) {
    if (onto & ~s.vars)
        throw PreconditionError("project: target variables not all mentioned");
    return {onto, s.pos & onto};
}

ModelSet make_model_set(VarMask vars, std::vector<VarMask> models) {
    for (VarMask m : models)
        if (m & ~vars) throw PreconditionError("model set: model mentions foreign variables");
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
    return {vars, std::move(models)};
}

ModelSet project_models(const ModelSet& f, VarMask onto) {
    if (onto & ~f.vars)
        throw PreconditionError("project_models: target variables not all mentioned");
    std::vector<VarMask> out;
    out.reserve(f.models.size());
    for (VarMask m : f.models) out.push_back(m & onto);
    return make_model_set(onto, std::move(out));
}

ModelSet restrict_models(const ModelSet& f, const LiteralSet& s) {
    if (s.vars & ~f.vars)
        throw PreconditionError("restrict_models: assignment mentions foreign variables");
    std::vector<VarMask> out;
    for (VarMask m : f.models)
        if ((m & s.vars) == s.pos) out.push_back(m & ~s.vars);
    return make_model_set(f.vars & ~s.vars, std::move(out));
}

ModelSet arrow(const ModelSet& f, const LiteralSet& s) {
    if (s.vars & ~f.vars)
        throw PreconditionError("arrow: assignment mentions foreign variables");
    std::vector<VarMask> out;
    for (VarMask m : f.models)
        if ((m & s.vars) == s.pos) out.push_back(m);
    return make_model_set(f.vars, std::move(out));
}

void check_cnf(const Cnf& f) {
    if (f.num_vars < 0) throw PreconditionError("cnf: negative variable count");
    for (const auto& clause : f.clauses) {
        std::vector<int> vars;
        for (int lit : clause) {
            if (lit == 0) throw PreconditionError("cnf: zero literal");
            const int v = lit_var(lit);
            if (v >= f.num_vars) throw PreconditionError("cnf: literal beyond variable count");
            vars.push_back(v);
        }
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
            throw PreconditionError("cnf: variable repeated within a clause");
    }
}

bool satisfies(const Cnf& f, VarMask assignment) {
    for (const auto& clause : f.clauses) {
        bool sat = false;
        for (int lit : clause) {
            const VarMask b = var_bit(lit_var(lit));
            if (lit_positive(lit) ? (assignment & b) != 0 : (assignment & b) == 0) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

namespace {

struct ClauseMasks {
    std::vector<VarMask> pos, neg;
};

ClauseMasks clause_masks(const Cnf& f) {
    ClauseMasks cm;
    cm.pos.reserve(f.clauses.size());
    cm.neg.reserve(f.clauses.size());
    for (const auto& clause : f.clauses) {
        VarMask p = 0, n = 0;
        for (int lit : clause)
            (lit_positive(lit) ? p : n) |= var_bit(lit_var(lit));
        cm.pos.push_back(p);
        cm.neg.push_back(n);
    }
    return cm;
}

bool satisfies_masks(const ClauseMasks& cm, VarMask m) {
    for (std::size_t i = 0; i < cm.pos.size(); ++i)
        if ((cm.pos[i] & m) == 0 && (cm.neg[i] & ~m) == 0) return false;
    return true;
}

void check_enumeration_cap(const Cnf& f, const CountingConfig& cfg, const char* op) {
    check_cnf(f);
    if (f.num_vars > cfg.var_cap || f.num_vars >= kMaskBits)
        throw CapExceeded(std::string(op) + ": variable count exceeds the enumeration cap");
}

} // namespace

std::vector<VarMask> enumerate_models(const Cnf& f, const CountingConfig& cfg) {
    check_enumeration_cap(f, cfg, "enumerate_models");
    const auto cm = clause_masks(f);
    std::vector<VarMask> out;
    const VarMask end = VarMask{1} << f.num_vars;
    for (VarMask m = 0; m < end; ++m)
        if (satisfies_masks(cm, m)) out.push_back(m);
    return out;
}

ModelSet model_set_of(const Cnf& f, const CountingConfig& cfg) {
    return {all_vars_mask(f.num_vars), enumerate_models(f, cfg)};
}

mpz_class count_models(const Cnf& f, const CountingConfig& cfg) {
    check_enumeration_cap(f, cfg, "count_models");
    const auto cm = clause_masks(f);
    unsigned long count = 0;
    const VarMask end = VarMask{1} << f.num_vars;
    for (VarMask m = 0; m < end; ++m)
        if (satisfies_masks(cm, m)) ++count;
    return mpz_class{count};
}

mpz_class count_models_with_all_true(const Cnf& f, VarMask u_set, const CountingConfig& cfg) {
    check_enumeration_cap(f, cfg, "count_models_with_all_true");
    check_mask_range(f.num_vars, "count_models_with_all_true");
    if (u_set & ~all_vars_mask(f.num_vars))
        throw PreconditionError("count_models_with_all_true: foreign variables");
    std::vector<int> free_pos;
    for (int v = 0; v < f.num_vars; ++v)
        if (!(u_set & var_bit(v))) free_pos.push_back(v);
    const auto cm = clause_masks(f);
    unsigned long count = 0;
    const VarMask end = VarMask{1} << free_pos.size();
    for (VarMask i = 0; i < end; ++i) {
        VarMask m = u_set;
        for (std::size_t b = 0; b < free_pos.size(); ++b)
            if (i >> b & 1u) m |= var_bit(free_pos[b]);
        if (satisfies_masks(cm, m)) ++count;
    }
    return mpz_class{count};
}

ModelSet restrict_models(const Cnf& f, const LiteralSet& s, const CountingConfig& cfg) {
    return restrict_models(model_set_of(f, cfg), s);
}

Cnf restrict_cnf(const Cnf& f, const LiteralSet& s) {
    check_cnf(f);
    check_mask_range(f.num_vars, "restrict_cnf");
    if (s.vars & ~all_vars_mask(f.num_vars))
        throw PreconditionError("restrict_cnf: assignment mentions foreign variables");
    Cnf out;
    out.num_vars = f.num_vars;
    for (const auto& clause : f.clauses) {
        bool sat = false;
        std::vector<int> rest;
        for (int lit : clause) {
            const VarMask b = var_bit(lit_var(lit));
            if (!(s.vars & b)) {
                rest.push_back(lit);
                continue;
            }
            if (((s.pos & b) != 0) == lit_positive(lit)) {
                sat = true;
                break;
            }
        }
        if (!sat) out.clauses.push_back(std::move(rest));
    }
    return out;
}

bool has_empty_clause(const Cnf& f) {
    for (const auto& clause : f.clauses)
        if (clause.empty()) return true;
    return false;
}

Cnf phi_of_graph(const Graph& g) {
    if (g.has_isolated_vertex())
        throw PreconditionError("phi_of_graph: isolated vertex");
    Cnf f;
    f.num_vars = g.num_vertices();
    for (auto [u, v] : g.edges()) f.clauses.push_back({pos_lit(u), pos_lit(v)});
    return f;
}

PhiInstance build_phi_k(int k, int height) {
    ProductGraph product = build_gk_instance(k, height);
    Cnf cnf = phi_of_graph(product.as_graph());
    return {std::move(product), std::move(cnf)};
}

Graph primal_graph(const Cnf& f) {
    check_cnf(f);
    Graph g(f.num_vars);
    for (const auto& clause : f.clauses)
        for (std::size_t i = 0; i < clause.size(); ++i)
            for (std::size_t j = i + 1; j < clause.size(); ++j)
                g.add_edge(lit_var(clause[i]), lit_var(clause[j]));
    return g;
}

std::vector<int> independent_no_common_neighbor_subset(const Graph& g, const std::vector<int>& u,
                                                       bool forbid_common_neighbors) {
    std::vector<char> seen(g.num_vertices(), 0);
    for (int v : u) {
        if (v < 0 || v >= g.num_vertices())
            throw PreconditionError("independent subset: vertex out of range");
        if (seen[v]) throw PreconditionError("independent subset: duplicate vertex");
        seen[v] = 1;
    }
    auto share_neighbor = [&](int a, int b) {
        const auto &na = g.neighbors(a), &nb = g.neighbors(b);
        std::size_t i = 0, j = 0;
        while (i < na.size() && j < nb.size()) {
            if (na[i] == nb[j]) return true;
            na[i] < nb[j] ? ++i : ++j;
        }
        return false;
    };
    std::vector<int> s;
    for (int v : u) {
        bool ok = true;
        for (int w : s) {
            if (g.has_edge(v, w) || (forbid_common_neighbors && share_neighbor(v, w))) {
                ok = false;
                break;
            }
        }
        if (ok) s.push_back(v);
    }
    return s;
}

void write_dimacs(std::ostream& os, const Cnf& f) {
    os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& clause : f.clauses) {
        for (int lit : clause) os << lit << ' ';
        os << "0\n";
    }
}

Cnf read_dimacs(std::istream& is) {
    Cnf f;
    std::string line;
    long long num_clauses = -1;
    while (num_clauses < 0 && std::getline(is, line)) {
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string p, fmt;
        if (!(ls >> p >> fmt >> f.num_vars >> num_clauses) || p != "p" || fmt != "cnf")
            throw IoError("dimacs: malformed problem line");
    }
    if (num_clauses < 0) throw IoError("dimacs: missing problem line");
    std::vector<int> clause;
    int lit = 0;
    while (static_cast<long long>(f.clauses.size()) < num_clauses && is >> lit) {
        if (lit == 0) {
            f.clauses.push_back(clause);
            clause.clear();
        } else {
            clause.push_back(lit);
        }
    }
    if (static_cast<long long>(f.clauses.size()) != num_clauses)
        throw IoError("dimacs: clause count mismatch");
    check_cnf(f);
    return f;
}

void write_models(std::ostream& os, const ModelSet& f) {
    for (VarMask m : f.models) {
        bool first = true;
        for (int v = 0; v < kMaskBits; ++v) {
            if (!(f.vars & var_bit(v))) continue;
            if (!first) os << ' ';
            first = false;
            os << (m & var_bit(v) ? pos_lit(v) : neg_lit(v));
        }
        os << '\n';
    }
}

} // namespace pmw
