#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pmw/cnf.hpp"
#include "pmw/graph.hpp"
#include "pmw/matching.hpp"

namespace pmw {

// One directed edge; lit is a DIMACS-signed literal, 0 when unlabeled.
struct NrobpEdge {
    int from = -1;
    int to = -1;
    int lit = 0;
};

// Read-once switching program: a DAG with one source and one sink where every
// source-sink path reads each declared variable exactly once, in any order.
// Vertices are 0..num_nodes-1, variables 0..num_vars-1.
struct Nrobp {
    int num_nodes = 0;
    int num_vars = 0;
    int source = -1;
    int sink = -1;
    std::vector<NrobpEdge> edges;
};

struct ValidationIssue {
    std::string what;
    std::vector<int> witness; // vertex ids of a path or cycle illustrating the issue
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool valid() const { return issues.empty(); }
};

// Structure, unique source/sink, acyclicity, and read-once uniformity: all
// paths into a vertex read the same variable set, nothing is read twice, and
// full paths read everything. Computed by DAG dynamic programming, not path
// enumeration.
ValidationReport validate(const Nrobp& z);

// Per-vertex variable geography of a valid program. Construction re-runs
// validate and throws PreconditionError on the first issue.
class NrobpAnalysis {
public:
    explicit NrobpAnalysis(const Nrobp& z);

    const Nrobp& program() const { return z_; }
    int num_nodes() const { return z_.num_nodes; }
    int num_vars() const { return z_.num_vars; }

    // Edge indices, sorted by (head, literal) for deterministic traversal.
    const std::vector<int>& out_edges(int v) const { return out_[v]; }
    const std::vector<int>& in_edges(int v) const { return in_[v]; }
    const std::vector<int>& topo_order() const { return topo_; }

    VarMask before_vars(int v) const { return vb_[v]; }  // read on every source->v path
    VarMask after_vars(int v) const { return va_[v]; }   // read on every v->sink path
    VarMask before_neg(int v) const { return bneg_[v]; } // negated on some source->v path
    VarMask after_neg(int v) const { return aneg_[v]; }  // negated on some v->sink path

    mpz_class path_count() const;

    // Source-sink paths as edge-index sequences, lexicographic in the sorted
    // out-edge order. Throws CapExceeded when the count exceeds the cap.
    std::vector<std::vector<int>> enumerate_paths(std::size_t path_cap = 100000) const;

    // Positive-variable mask of the assignment a full path carries.
    VarMask path_model(const std::vector<int>& path) const;
    // Variables in read order along a full path.
    std::vector<int> path_var_order(const std::vector<int>& path) const;
    // Vertices v_0..v_m of a full path, source first.
    std::vector<int> path_vertices(const std::vector<int>& path) const;

private:
    Nrobp z_;
    std::vector<std::vector<int>> out_, in_;
    std::vector<int> topo_;
    std::vector<VarMask> vb_, va_, bneg_, aneg_;
};

// {A(P) : P source-sink path}, deduplicated.
ModelSet represented_function(const Nrobp& z, std::size_t path_cap = 100000);

// Layered program reading variables in the given order, one node per distinct
// residual model set. Requires f nonempty with variables 0..n-1.
Nrobp build_order_nrobp(const ModelSet& f, const std::vector<int>& order);

// True when one of x_set / y_set lies entirely before v and the other
// entirely after it.
bool separates(const NrobpAnalysis& z, int v, VarMask x_set, VarMask y_set);

// One end per matching edge, read positively on every source-sink path
// through u. Requires every edge of m to be separated by u; when the
// represented set contains a model falsifying a matched edge clause, the
// combined witness path falsifying it is reported in the error.
std::vector<int> fixed_set(const NrobpAnalysis& z, int u, const Matching& m);

// -- bottleneck analyses over a program representing a subset of a graph's
//    edge formula --

struct BottleneckCut {
    int vertex = -1;        // path vertex right after the split
    int split = 0;          // labeled edges before the cut on the defining path
    Matching m;             // witnessing matching across the split
    std::vector<int> u_set; // fixed set at the vertex
    mpz_class covered;      // models containing u_set positively
};

struct SingleBottleneckReport {
    ModelSet f;
    mpz_class path_count;
    std::vector<BottleneckCut> cuts; // deduplicated by vertex, first path wins
    bool covering = false;           // every model covered by some cut
};

// Peak witnessing matching over each path's variable order, the vertex at the
// peak split, and its fixed set.
SingleBottleneckReport single_bottleneck(const Nrobp& z, const Graph& g,
                                         std::size_t path_cap = 100000);

struct TupleBlock {
    std::size_t begin = 0, end = 0; // labeled-edge range of the block
    std::size_t prefix_len = 0;     // labeled edges kept in the block prefix
    Matching m_full;                // best matching between prefix variables and the rest
    Matching m;                     // edges whose far end sits at the popular location
    int location = 0;               // 0 within the block, 1 before it, 2 after it
    int vertex = -1;                // separating path vertex
    std::vector<int> u_set;         // fixed set of m at vertex
};

struct CharacteristicTuple {
    std::vector<TupleBlock> blocks;
    std::vector<int> u_set;        // sorted union of block fixed sets
    Matching m_union;              // union of block matchings, deduplicated
    int max_edge_multiplicity = 0; // blocks sharing one matching edge

    std::vector<int> components() const;
};

// Partitions the path into blocks (default: ceil(sqrt(n))-variable blocks,
// merging the last two when sqrt(n) is fractional; explicit q: balanced with
// sizes differing by at most one), maximizes the prefix cut matching per
// block, keeps the popular far-end location, and unions the fixed sets.
CharacteristicTuple characteristic_tuple(const NrobpAnalysis& z, const Graph& g,
                                         const std::vector<int>& path, int q = 0);

struct CensusRow {
    std::vector<int> components;
    std::vector<int> u_set; // fixed-set union of the first path producing the tuple
    mpz_class f_a;          // distinct models over paths through all components
};

struct BottleneckCensus {
    int q = 0;
    mpz_class path_count;
    std::size_t model_count = 0;
    std::vector<CensusRow> tuples;        // deduplicated by components
    std::vector<std::vector<int>> b_sets; // distinct i-th components over tuples
    std::size_t mu = 0;                   // largest |b_sets[i]|
    mpz_class b_product;
    mpz_class mu_pow_q;
    std::size_t max_f_a = 0;
    int max_edge_multiplicity = 0;
    bool covering = false;    // every model lies in some tuple's model set
    bool eq21 = false;        // |F| <= max|F_a| * |TP|
    bool eq23 = false;        // |TP| <= prod|B_i| <= mu^q
    bool cover_bound = false; // every path's tuple: 7*|U| >= |union of M_i|
};

BottleneckCensus bottleneck_census(const Nrobp& z, const Graph& g, int q = 0,
                                   std::size_t path_cap = 100000);

void write_census_csv(std::ostream& os, const BottleneckCensus& c);

// Text format: header `nrobp <#nodes> <#edges> <source> <sink> <#vars>`, then
// one `u v [lit]` line per edge, the literal omitted on unlabeled edges.
Nrobp read_nrobp(std::istream& is);
void write_nrobp(std::ostream& os, const Nrobp& z);

} // namespace pmw
