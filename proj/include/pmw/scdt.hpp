#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "pmw/cnf.hpp"
#include "pmw/graph.hpp"

namespace pmw {

struct ScdtEdge {
    bool positive = false;
    mpq_class weight; // models below child / models below parent
    int child = -1;
};

struct ScdtNode {
    int var = -1; // branching variable; -1 at leaves
    int parent = -1;
    int depth = 0;
    LiteralSet assignment;      // literals fixed on the root path
    std::size_t lo = 0, hi = 0; // model range handled below this node
    std::vector<ScdtEdge> out;  // negative edge first when both exist
};

// Full branching trie over a fixed variable order, one leaf per model, with
// conditional-count edge weights. Node 0 is the root; children follow their
// parent (reverse iteration is bottom-up).
struct Scdt {
    Cnf formula;
    std::vector<int> order;
    std::vector<VarMask> models; // sorted by branch sequence along `order`
    std::vector<ScdtNode> nodes;

    int num_vars() const { return static_cast<int>(order.size()); }
    bool is_leaf(int u) const { return nodes[u].out.empty(); }
    std::size_t models_below(int u) const { return nodes[u].hi - nodes[u].lo; }
    VarMask leaf_model(int leaf) const;
    std::vector<int> leaves() const;
};

Scdt build_scdt(const Cnf& f, const std::vector<int>& order,
                const CountingConfig& cfg = {});

// Product of edge weights from the root to the node.
mpq_class path_weight(const Scdt& t, int node);

// Sum of weights of node-to-leaf paths assigning every s_set variable
// positively below the node. Zero when s_set meets the node's assignment.
mpq_class weight_of_path_family(const Scdt& t, int node, VarMask s_set);

// Same quantity by explicit leaf enumeration; oracle for the recursive form.
mpq_class weight_of_path_family_direct(const Scdt& t, int node, VarMask s_set);

// weight_of_path_family at every node of the tree in one bottom-up pass.
// Entries for nodes whose assignment meets s_set are 0.
std::vector<mpq_class> family_weights_all_nodes(const Scdt& t, VarMask s_set);

// One line per edge: parent child signed-literal numerator/denominator.
void dump_scdt(std::ostream& os, const Scdt& t);

// -- forcing machinery over the formula's graph --

// x is unassigned and some neighbor of x occurs negatively in a.
bool forced_to_one(const Graph& g, int x, const LiteralSet& a);

// Neighbors of x neither assigned by a nor forced to 1 by a.
std::vector<int> live_neighbors(const Graph& g, int x, const LiteralSet& a);

// 1 - 2^-(2d+1)
mpq_class damping_constant(int d);

// Product of damping constants over s_set, per-member degree |N(x)| under a.
mpq_class alpha_bound(const Graph& g, VarMask s_set, const LiteralSet& a);

// -- instance verification --

struct VerifyRow {
    int node = -1;
    std::string item;
    mpq_class lhs, rhs;
    bool pass = true;
};

struct VerifyReport {
    long long checked = 0;
    long long failed = 0;
    std::vector<VerifyRow> rows; // failures, capped; all rows if collect_all
    bool pass() const { return failed == 0; }
};

void write_report_csv(std::ostream& os, const VerifyReport& r);

struct MaintreeCheck {
    mpq_class lhs, rhs;
    bool pass = false;
};

// Exact two-sided evaluation of the path-family bound at one node. Throws
// PreconditionError if s_set violates the hypothesis: members adjacent,
// members sharing a neighbor (unless lax), or a member forced at the node.
MaintreeCheck verify_maintree(const Scdt& t, const Graph& g, int node, VarMask s_set,
                              bool lax = false);

// All nodes x all hypothesis-satisfying subsets with <= max_s members.
VerifyReport verify_maintree_sweep(const Scdt& t, const Graph& g, int max_s,
                                   bool lax = false, bool collect_all = false);

// Positive-edge weight in [1/2, 1-(1/2)^(|N|+1)] and negative-edge weight in
// [(1/2)^(|N|+1), 1/2] at every internal node with an unforced label.
VerifyReport verify_largeportion_treeweights(const Scdt& t, const Graph& g,
                                             bool collect_all = false);

struct ManyvarsReport {
    int n = 0;
    int d = 0; // max degree
    std::vector<int> u_set, s_set;
    mpz_class phi_count, arrow_u_count, arrow_s_count;
    bool pass = false;       // |phi<-U| <= |phi| / 2^(|U|/b_d), checked exactly
    bool route_pass = false; // |phi<-S| / |phi| <= c_d^|S|, checked exactly
    double b_corrected = 0;  // (d+1) / log2(1/c_d)
    double b_literal = 0;    // log2(1/c_d) / (d+1)
    double slack_bits = 0;   // log2(|phi|/|phi<-U|) - |U|/b_corrected
};

// strict_subset selects S without common neighbors (smaller S, stronger
// hypothesis); otherwise plain greedy independence.
ManyvarsReport verify_manyvars1(const Graph& g, const std::vector<int>& u_set,
                                bool strict_subset = false,
                                const CountingConfig& cfg = {});

} // namespace pmw
