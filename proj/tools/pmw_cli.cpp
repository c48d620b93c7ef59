#include <chrono>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pmw/cnf.hpp"
#include "pmw/corpus.hpp"
#include "pmw/errors.hpp"
#include "pmw/graph.hpp"
#include "pmw/nrobp.hpp"
#include "pmw/product_graph.hpp"
#include "pmw/suites.hpp"
#include "pmw/tree_decomposition.hpp"

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw pmw::IoError("cannot open " + path + " for writing");
    return os;
}

// Largest variable count whose full assignment space fits under the cap.
int var_cap_from_model_cap(std::uint64_t cap_models) {
    int cap = 0;
    while (cap < 62 && (std::uint64_t{1} << (cap + 1)) <= cap_models) ++cap;
    return cap;
}

int cmd_generate(int k, int height, const std::string& out_dir, bool with_nrobp, int var_cap) {
    const pmw::PhiInstance inst = pmw::build_phi_k(k, height);
    std::filesystem::create_directories(out_dir);
    const std::string base = out_dir + "/gk_" + std::to_string(k) + "_" + std::to_string(height);
    {
        auto os = open_out(base + ".graph");
        pmw::write_edge_list(inst.product.as_graph(), os);
    }
    {
        auto os = open_out(base + ".cnf");
        pmw::write_dimacs(os, inst.cnf);
    }
    {
        const pmw::TreeDecomposition td = pmw::gk_tree_decomposition(inst.product);
        auto os = open_out(base + ".td");
        pmw::write_td(td, inst.product.num_vertices(), os);
    }
    if (with_nrobp) {
        const pmw::ModelSet f = pmw::model_set_of(inst.cnf, pmw::CountingConfig{var_cap});
        std::vector<int> order(static_cast<std::size_t>(inst.cnf.num_vars));
        std::iota(order.begin(), order.end(), 0);
        const pmw::Nrobp z = pmw::build_order_nrobp(f, order);
        auto os = open_out(base + ".nrobp");
        pmw::write_nrobp(os, z);
    }
    std::cout << "generate " << base << ".{graph,cnf,td" << (with_nrobp ? ",nrobp}" : "}")
              << " vars=" << inst.cnf.num_vars << " clauses=" << inst.cnf.clauses.size() << '\n';
    return 0;
}

int cmd_verify(const std::string& suite, const pmw::SuiteConfig& cfg, const std::string& out_dir) {
    std::vector<pmw::SuiteReport> reports;
    auto run = [&](pmw::SuiteReport (*f)(const pmw::SuiteConfig&)) { reports.push_back(f(cfg)); };
    if (suite == "pmw" || suite == "all") {
        run(pmw::run_pmw_oracle_suite);
        run(pmw::run_tree_witness_suite);
    }
    if (suite == "scdt" || suite == "all") {
        run(pmw::run_scdt_counting_suite);
        run(pmw::run_maintree_suite);
        run(pmw::run_manyvars_suite);
    }
    if (suite == "nrobp" || suite == "all") {
        run(pmw::run_nrobp_suite);
        run(pmw::run_census_suite);
    }
    bool all_pass = true;
    for (const pmw::SuiteReport& r : reports) {
        for (const pmw::SuiteCheck& row : r.rows)
            std::cout << r.suite << ": " << (row.pass ? "PASS" : "FAIL") << ' ' << row.name
                      << " (" << row.detail << ")\n";
        std::cout << r.suite << ": " << (r.pass() ? "PASS" : "FAIL") << " total " << r.checked
                  << " checks, " << r.failed << " failed\n";
        all_pass = all_pass && r.pass();
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            auto os = open_out(out_dir + "/" + r.suite + ".csv");
            pmw::write_suite_csv(os, r);
        }
    }
    return all_pass ? 0 : 1;
}

int cmd_census(int k, int height, std::uint64_t seed, double ratio, bool worst,
               std::size_t cap_paths, int var_cap, const std::string& out_path) {
    const pmw::PhiInstance inst = pmw::build_phi_k(k, height);
    const pmw::Graph& g = inst.product.as_graph();
    pmw::ModelSet f = pmw::model_set_of(inst.cnf, pmw::CountingConfig{var_cap});
    std::vector<int> order(static_cast<std::size_t>(inst.cnf.num_vars));
    std::iota(order.begin(), order.end(), 0);
    std::string variant = "phi";
    if (ratio < 1.0) {
        if (worst) {
            const pmw::Nrobp z0 = pmw::build_order_nrobp(f, order);
            const pmw::BottleneckCensus c0 = pmw::bottleneck_census(z0, g, 0, cap_paths);
            const pmw::CensusRow* biggest = &c0.tuples.front();
            for (const auto& row : c0.tuples)
                if (row.f_a > biggest->f_a) biggest = &row;
            f = pmw::concentrated_submodel_set(f, biggest->u_set, ratio);
            variant = "concentrated";
        } else {
            pmw::Rng rng(seed);
            f = pmw::random_submodel_set(f, ratio, rng);
            variant = "uniform";
        }
    }
    const pmw::Nrobp z = pmw::build_order_nrobp(f, order);
    const pmw::BottleneckCensus c = pmw::bottleneck_census(z, g, 0, cap_paths);
    if (out_path.empty()) {
        pmw::write_census_csv(std::cout, c);
    } else {
        auto os = open_out(out_path);
        pmw::write_census_csv(os, c);
    }
    const bool ok =
        c.covering && c.eq21 && c.eq23 && c.max_edge_multiplicity <= 2 && c.cover_bound;
    std::cout << "census k=" << k << " height=" << height << " variant=" << variant
              << " models=" << c.model_count << " tuples=" << c.tuples.size() << " q=" << c.q
              << " mu=" << c.mu << ' ' << (ok ? "PASS" : "FAIL") << '\n';
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"partial matching width toolkit: instances, verification suites, censuses"};
    app.require_subcommand(1);

    int k = 8;
    int height = 1;
    std::uint64_t seed = 1;
    int cap_perms = 9;
    std::uint64_t cap_models = std::uint64_t{1} << 26;
    std::uint64_t cap_paths = 100000;
    double ratio = 1.0;

    app.add_option("--seed", seed, "seed for the randomized corpora");
    app.add_option("--cap-perms", cap_perms, "largest vertex set enumerated by orderings")
        ->envname("PMW_CAP_PERMS");
    app.add_option("--cap-models", cap_models, "largest assignment space enumerated")
        ->envname("PMW_CAP_MODELS");
    app.add_option("--cap-paths", cap_paths, "largest path count enumerated")
        ->envname("PMW_CAP_PATHS");

    CLI::App* gen = app.add_subcommand("generate", "write instance files for one (k, height)");
    std::string gen_out = ".";
    bool with_nrobp = false;
    gen->fallthrough();
    gen->add_option("--k", k, "instance parameter, a multiple of 4");
    gen->add_option("--height", height, "copy-tree height");
    gen->add_option("--out", gen_out, "output directory");
    gen->add_flag("--nrobp", with_nrobp, "also write the order program of the edge formula");

    CLI::App* ver = app.add_subcommand("verify", "run verification suites, print one line per check");
    std::string suite = "all";
    std::string ver_out;
    ver->fallthrough();
    ver->add_option("suite,--suite", suite, "pmw, scdt, nrobp, or all")
        ->check(CLI::IsMember({"pmw", "scdt", "nrobp", "all"}));
    ver->add_option("--out", ver_out, "directory for per-suite CSV files");

    CLI::App* cen = app.add_subcommand("census", "multi-bottleneck census of one instance");
    std::string cen_out;
    bool worst = false;
    cen->fallthrough();
    cen->add_option("--k", k, "instance parameter, a multiple of 4");
    cen->add_option("--height", height, "copy-tree height");
    cen->add_option("--ratio", ratio, "fraction of models kept, in (0, 1]");
    cen->add_flag("--worst", worst, "concentrate deletion on the largest tuple family");
    cen->add_option("--out", cen_out, "CSV output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 2;
    try {
        if (gen->parsed()) {
            rc = cmd_generate(k, height, gen_out, with_nrobp, var_cap_from_model_cap(cap_models));
        } else if (ver->parsed()) {
            pmw::SuiteConfig cfg;
            cfg.seed = seed;
            cfg.perm_cap = cap_perms;
            cfg.var_cap = var_cap_from_model_cap(cap_models);
            cfg.path_cap = cap_paths;
            rc = cmd_verify(suite, cfg, ver_out);
        } else if (cen->parsed()) {
            if (!(ratio > 0.0 && ratio <= 1.0)) {
                std::cerr << "error: usage: --ratio must lie in (0, 1]\n";
                return 2;
            }
            rc = cmd_census(k, height, seed, ratio, worst, cap_paths,
                            var_cap_from_model_cap(cap_models), cen_out);
        }
    } catch (const pmw::CapExceeded& e) {
        std::cerr << "error: cap exceeded: " << e.what() << '\n';
        return 3;
    } catch (const pmw::PreconditionError& e) {
        std::cerr << "error: precondition: " << e.what() << '\n';
        return 2;
    } catch (const pmw::IoError& e) {
        std::cerr << "error: io: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << '\n';
        return 1;
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::fprintf(stderr, "elapsed %.2fs\n", dt.count());
    return rc;
}
