#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <gmpxx.h>

#include "pmw/graph.hpp"
#include "pmw/product_graph.hpp"

namespace pmw {

// Variables are 0-based ids tracked in 64-bit masks; counting and model-set
// ops therefore handle at most 64 variables. Literals use the DIMACS signed
// convention +-(v+1).
using VarMask = std::uint64_t;

inline VarMask var_bit(int v) { return VarMask{1} << v; }
inline int pos_lit(int v) { return v + 1; }
inline int neg_lit(int v) { return -(v + 1); }
inline int lit_var(int lit) { return (lit > 0 ? lit : -lit) - 1; }
inline bool lit_positive(int lit) { return lit > 0; }

// Partial assignment: the mentioned variables and, among them, the positive
// ones. A variable never occurs with both polarities by construction.
struct LiteralSet {
    VarMask vars = 0;
    VarMask pos = 0; // subset of vars

    bool operator==(const LiteralSet&) const = default;
};

LiteralSet make_literal_set(const std::vector<int>& lits);
std::vector<int> literals_of(const LiteralSet& s);

// pre: onto is a subset of s.vars
LiteralSet project(const LiteralSet& s, VarMask onto);

// A Boolean function given extensionally: total assignments over `vars`,
// stored as the positive-variable masks, strictly increasing.
struct ModelSet {
    VarMask vars = 0;
    std::vector<VarMask> models;

    bool operator==(const ModelSet&) const = default;
};

ModelSet make_model_set(VarMask vars, std::vector<VarMask> models);

// Distinct projections of the models onto a subset of the variables.
ModelSet project_models(const ModelSet& f, VarMask onto);

// Models consistent with s, with s's variables removed.
ModelSet restrict_models(const ModelSet& f, const LiteralSet& s);

// Models containing s, variables kept.
ModelSet arrow(const ModelSet& f, const LiteralSet& s);

struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses; // DIMACS-signed literals

    bool operator==(const Cnf&) const = default;
};

// Literal ranges and per-clause variable distinctness.
void check_cnf(const Cnf& f);

bool satisfies(const Cnf& f, VarMask assignment);

struct CountingConfig {
    int var_cap = 26; // enumeration guard: refuse > 2^var_cap assignments
};

std::vector<VarMask> enumerate_models(const Cnf& f, const CountingConfig& cfg = {});
ModelSet model_set_of(const Cnf& f, const CountingConfig& cfg = {});
mpz_class count_models(const Cnf& f, const CountingConfig& cfg = {});

// |{models m : u_set positive in m}| without materializing the model list.
mpz_class count_models_with_all_true(const Cnf& f, VarMask u_set,
                                     const CountingConfig& cfg = {});

// Enumerating form of restrict_models for formulas.
ModelSet restrict_models(const Cnf& f, const LiteralSet& s, const CountingConfig& cfg = {});

// Satisfied clauses dropped, falsified literals removed; an unsatisfiable
// residue shows up as an empty clause. Variable count is kept.
Cnf restrict_cnf(const Cnf& f, const LiteralSet& s);
bool has_empty_clause(const Cnf& f);

// One clause (u v v) per edge. Rejects isolated vertices: every variable of
// the output occurs in some clause.
Cnf phi_of_graph(const Graph& g);

struct PhiInstance {
    ProductGraph product;
    Cnf cnf;
};

// The CNF of the tree-of-copies instance for parameters (k, height).
PhiInstance build_phi_k(int k, int height);

// Vertices = variables, edge when two variables share a clause.
Graph primal_graph(const Cnf& f);

// Greedy subset of u with no two members adjacent; with forbid_common_neighbors
// also no two members sharing a neighbor. Sizes are at least |u|/(d+1) resp.
// |u|/(d^2+1) for max degree d.
std::vector<int> independent_no_common_neighbor_subset(const Graph& g, const std::vector<int>& u,
                                                       bool forbid_common_neighbors);

void write_dimacs(std::ostream& os, const Cnf& f);
Cnf read_dimacs(std::istream& is);

// One model per line as signed 1-based tokens.
void write_models(std::ostream& os, const ModelSet& f);

} // namespace pmw
