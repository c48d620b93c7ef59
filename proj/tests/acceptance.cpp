// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Budgets are wall-clock seconds, pinned here so regressions are loud.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "pmw/suites.hpp"

using namespace pmw;

namespace {

struct Criterion {
    std::string name;
    std::function<SuiteReport(const SuiteConfig&)> run;
    double budget_s; // <= 0 means unbudgeted
};

} // namespace

int main() {
    const SuiteConfig cfg; // defaults ARE the gate
    const std::vector<Criterion> gate = {
        {"1-scdt-exact-counting", run_scdt_counting_suite, 60.0},
        {"2-maintree-bound", run_maintree_suite, 0.0},
        {"3-manyvars-bound", run_manyvars_suite, 0.0},
        {"4-pmw-oracle-and-witness", run_pmw_oracle_suite, 120.0},
        {"5-tree-instance-witnesses", run_tree_witness_suite, 0.0},
        {"6-nrobp-round-trip", run_nrobp_suite, 0.0},
        {"7-bottleneck-census", run_census_suite, 600.0},
    };

    bool all_pass = true;
    for (const auto& c : gate) {
        const auto t0 = std::chrono::steady_clock::now();
        SuiteReport rep;
        std::string error;
        try {
            rep = c.run(cfg);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;

        const bool in_budget = c.budget_s <= 0.0 || dt.count() < c.budget_s;
        const bool ok = error.empty() && rep.pass() && in_budget;
        all_pass = all_pass && ok;

        std::printf("%s criterion-%s checks=%lld failed=%lld elapsed=%.1fs", ok ? "PASS" : "FAIL",
                    c.name.c_str(), rep.checked, rep.failed, dt.count());
        if (c.budget_s > 0.0) std::printf(" budget=%.0fs", c.budget_s);
        std::printf("\n");

        if (!error.empty()) std::printf("  exception: %s\n", error.c_str());
        if (!in_budget) std::printf("  over budget\n");
        int shown = 0;
        for (const auto& row : rep.rows) {
            if (row.pass) continue;
            std::printf("  first failure: %s (%s)\n", row.name.c_str(), row.detail.c_str());
            if (++shown >= 3) break;
        }
        std::fflush(stdout);
    }
    return all_pass ? 0 : 1;
}
