#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pmw/cnf.hpp"

namespace pmw {

// Knobs shared by the verification suites. Defaults match the acceptance
// gate; smaller values make exploratory runs cheap.
struct SuiteConfig {
    std::uint64_t seed = 1;
    int perm_cap = 9;
    int var_cap = 26;
    std::size_t path_cap = 100000;
    double ratio = 0.125; // deepest approximant deletion ratio

    int random_formulas = 100;    // counting suite
    int orders_per_instance = 3;  // counting + maintree suites
    int maintree_max_s = 3;
    int manyvars_graphs = 200;
    int pmw_max_vertices = 8;
    int witness_lattice_max_vertices = 8; // full min-over-orders sweep bound
    int tree_samples_per_instance = 30;
    int nrobp_functions = 100;
};

struct SuiteCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    long long checked = 0; // individual assertions evaluated
    long long failed = 0;
    std::vector<SuiteCheck> rows;
    std::vector<std::string> csv; // header line first; written as-is

    bool pass() const { return failed == 0; }
};

// Exact leaf weights 1/|F| and unit out-weight sums on the exhaustive
// connected-graph corpus plus random satisfiable formulas, several orders
// each; edge-weight range checks on the graph-backed instances.
SuiteReport run_scdt_counting_suite(const SuiteConfig& cfg);

// The path-family bound at every node x admissible set on the corpus.
SuiteReport run_maintree_suite(const SuiteConfig& cfg);

// The aggregate positive-restriction inequality on random bounded-degree
// graphs with random U; slack distribution in the CSV.
SuiteReport run_manyvars_suite(const SuiteConfig& cfg);

// Permutation brute force against an independent subset-lattice oracle on
// every graph up to isomorphism and every vertex subset, plus the
// half-witness relation and per-ordering witness checks.
SuiteReport run_pmw_oracle_suite(const SuiteConfig& cfg);

// Constructive witnesses on tree-of-copies instances: size bounds, split
// balance, definition-level checks, and the width constant calibration.
SuiteReport run_tree_witness_suite(const SuiteConfig& cfg);

// Order-program round trips and fixed-set behavior against extensional
// path enumeration on random functions.
SuiteReport run_nrobp_suite(const SuiteConfig& cfg);

// Multi-bottleneck censuses of the tree-instance edge formulas, full and
// thinned, uniform and adversarial.
SuiteReport run_census_suite(const SuiteConfig& cfg);

// Adversarial thinning: keeps round(ratio * |f|) models (at least one),
// deleting the ones that set every u_set variable positively first.
ModelSet concentrated_submodel_set(const ModelSet& f, const std::vector<int>& u_set,
                                   double ratio);

void write_suite_csv(std::ostream& os, const SuiteReport& r);

} // namespace pmw
