// eitlin command-line front end: assembling F-blocks, running the certified
// bound/oracle/embedding sweeps, applying the forward map and the one-step
// reconstructor, and dumping the majorant-tightness table.

#include <complex>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eitlin/eitlin.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

struct VerifyOptions {
    std::string suite = "all";
    std::string out;
    std::string config;
    double tol = 1e-14;       // k=1 equality tolerance (bounds suite)
    double oracle_tol = 1e-9;
    double zero_tol = 1e-12;
    int dom_max_m = 500;
    int dom_max_j = 50;
    int gron_max_m = 200;
    int gron_max_j = 20;
    int schur_max_mk = 2000;
    int schur_max_j = 100;
    int norm_max_j = 50;
    int norm_iters = 200;
    std::vector<int> norm_sizes = {100, 500, 2000};
    int oracle_max_j = 6;
    int oracle_max_k = 6;
    int oracle_max_m = 10;
    int emb_count = 50;
    int emb_trials = 10000;
    std::uint64_t seed = 1;
};

// JSON config supplies sweep parameters; explicitly passed flags win.
void apply_config(VerifyOptions& opt, const CLI::App& cmd) {
    if (opt.config.empty()) return;
    std::ifstream in(opt.config);
    if (!in) throw std::runtime_error("cannot open config '" + opt.config + "'");
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error(opt.config + ": " + e.what());
    }
    const auto load_int = [&](const char* key, const char* flag, int& slot) {
        if (doc.contains(key) && cmd.count(flag) == 0) slot = doc.at(key).get<int>();
    };
    load_int("dom_max_m", "--dom-max-m", opt.dom_max_m);
    load_int("dom_max_j", "--dom-max-j", opt.dom_max_j);
    load_int("gron_max_m", "--gron-max-m", opt.gron_max_m);
    load_int("gron_max_j", "--gron-max-j", opt.gron_max_j);
    load_int("schur_max_mk", "--schur-max-mk", opt.schur_max_mk);
    load_int("schur_max_j", "--schur-max-j", opt.schur_max_j);
    load_int("norm_max_j", "--norm-max-j", opt.norm_max_j);
    load_int("norm_iters", "--norm-iters", opt.norm_iters);
    load_int("oracle_max_j", "--max-j", opt.oracle_max_j);
    load_int("oracle_max_k", "--max-k", opt.oracle_max_k);
    load_int("oracle_max_m", "--max-m", opt.oracle_max_m);
    load_int("emb_count", "--count", opt.emb_count);
    load_int("emb_trials", "--trials", opt.emb_trials);
    if (doc.contains("tol") && cmd.count("--tol") == 0) {
        opt.tol = doc.at("tol").get<double>();
    }
    if (doc.contains("oracle_tol") && cmd.count("--oracle-tol") == 0) {
        opt.oracle_tol = doc.at("oracle_tol").get<double>();
    }
    if (doc.contains("zero_tol") && cmd.count("--zero-tol") == 0) {
        opt.zero_tol = doc.at("zero_tol").get<double>();
    }
    if (doc.contains("seed") && cmd.count("--seed") == 0) {
        opt.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("norm_sizes") && cmd.count("--norm-sizes") == 0) {
        opt.norm_sizes = doc.at("norm_sizes").get<std::vector<int>>();
    }
}

nlohmann::json run_bounds_suite(const VerifyOptions& opt) {
    using namespace eitlin;
    bounds::BoundReport report;
    auto absorb = [&report](bounds::BoundReport part) {
        for (auto& c : part.checks) report.checks.push_back(std::move(c));
    };
    auto dom = bounds::domination_check(opt.dom_max_m, opt.dom_max_j);
    // the k=1 equality margin honors the requested tolerance
    for (auto& c : dom.checks) {
        if (c.name.rfind("k=1", 0) == 0) {
            c.worst_margin = opt.tol - c.worst_value;
            c.worst_bound = opt.tol;
            c.finalize();
        }
    }
    absorb(std::move(dom));
    absorb(bounds::gronwall_check(opt.gron_max_m, opt.gron_max_j));
    absorb(bounds::schur_check(opt.schur_max_mk, opt.schur_max_j));
    absorb(bounds::norm_check(opt.norm_sizes, opt.norm_max_j, opt.norm_iters));
    return eitlin::io::to_json(report);
}

nlohmann::json run_oracle_suite(const VerifyOptions& opt) {
    const auto res = eitlin::oracle::box_check(opt.oracle_max_j, opt.oracle_max_k,
                                               opt.oracle_max_m);
    const bool pass = res.max_discrepancy <= opt.oracle_tol &&
                      res.max_structural_zero <= opt.zero_tol;
    return {{"checks",
             {{{"name", "oracle equivalence (nonzero entries)"},
               {"pass", res.max_discrepancy <= opt.oracle_tol},
               {"worst_value", res.max_discrepancy},
               {"worst_bound", opt.oracle_tol},
               {"worst_margin", opt.oracle_tol - res.max_discrepancy}},
              {{"name", "oracle structural zeros"},
               {"pass", res.max_structural_zero <= opt.zero_tol},
               {"worst_value", res.max_structural_zero},
               {"worst_bound", opt.zero_tol},
               {"worst_margin", opt.zero_tol - res.max_structural_zero}}}},
            {"tuples", res.tuples},
            {"all_pass", pass}};
}

nlohmann::json run_embedding_suite(const VerifyOptions& opt) {
    std::vector<int> ranks;
    for (int m = 1; m < opt.emb_count; ++m) ranks.push_back(m);
    const auto res = eitlin::sobolev::embedding_sweep(
        opt.emb_trials, opt.emb_count, ranks, {0.1, 0.25, 0.5}, opt.seed);
    return {{"checks",
             {{{"name", "embedding error <= bound"},
               {"pass", res.pass},
               {"worst_value", res.worst_ratio},
               {"worst_bound", 1.0},
               {"worst_margin", 1.0 - res.worst_ratio}}}},
            {"trials", opt.emb_trials},
            {"checks_run", res.checks},
            {"all_pass", res.pass}};
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty() || out_path == "-") {
        std::cout << content;
    } else {
        eitlin::io::write_file(out_path, content);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"linearized EIT forward map on the unit disk: certified bounds, "
                 "quadrature oracle, and one-step reconstruction"};
    app.require_subcommand(1);

    // global fallbacks; a subcommand's own --tol/--seed wins
    double global_tol = -1.0;
    std::uint64_t global_seed = 0;
    bool global_seed_set = false;
    app.add_option("--tol", global_tol, "default tolerance for all commands");
    app.add_option("--seed", global_seed, "default RNG seed for all commands")
        ->each([&](const std::string&) { global_seed_set = true; });

    // --- assemble ---
    auto* assemble = app.add_subcommand("assemble", "write a finite section of F^{|j|} as CSV m,k,value");
    int as_j = 0, as_rows = 1, as_cols = 1;
    std::string as_out;
    assemble->add_option("--j", as_j, "|j| of the block")->check(CLI::NonNegativeNumber);
    assemble->add_option("--rows", as_rows, "row truncation M")->required();
    assemble->add_option("--cols", as_cols, "column truncation K <= M")->required();
    assemble->add_option("--out", as_out, "output path (default stdout)");

    // --- verify ---
    auto* verify = app.add_subcommand("verify", "run certified sweeps; exit 0 iff all margins pass");
    VerifyOptions vo;
    verify->add_option("--suite", vo.suite, "bounds|oracle|embedding|all")
        ->check(CLI::IsMember({"bounds", "oracle", "embedding", "all"}));
    verify->add_option("--out", vo.out, "JSON report path (default stdout)");
    verify->add_option("--config", vo.config, "JSON config with sweep ranges (flags override)");
    verify->add_option("--tol", vo.tol, "k=1 equality tolerance (relative)");
    verify->add_option("--oracle-tol", vo.oracle_tol, "oracle discrepancy tolerance");
    verify->add_option("--zero-tol", vo.zero_tol, "structural-zero tolerance");
    verify->add_option("--dom-max-m", vo.dom_max_m, "domination sweep max m");
    verify->add_option("--dom-max-j", vo.dom_max_j, "domination sweep max |j|");
    verify->add_option("--gron-max-m", vo.gron_max_m, "Gronwall sweep max m");
    verify->add_option("--gron-max-j", vo.gron_max_j, "Gronwall sweep max |j|");
    verify->add_option("--schur-max-mk", vo.schur_max_mk, "Schur sweep max m and k");
    verify->add_option("--schur-max-j", vo.schur_max_j, "Schur sweep max |j|");
    verify->add_option("--norm-max-j", vo.norm_max_j, "norm sweep max |j|");
    verify->add_option("--norm-iters", vo.norm_iters, "power iterations");
    verify->add_option("--norm-sizes", vo.norm_sizes, "square truncations for the norm sweep");
    verify->add_option("--max-j", vo.oracle_max_j, "oracle box max |j|");
    verify->add_option("--max-k", vo.oracle_max_k, "oracle box max k");
    verify->add_option("--max-m", vo.oracle_max_m, "oracle box max |m|, |n|");
    verify->add_option("--count", vo.emb_count, "embedding matrix size");
    verify->add_option("--trials", vo.emb_trials, "embedding trials");
    verify->add_option("--seed", vo.seed, "RNG seed");

    // --- figure1 ---
    auto* figure1 = app.add_subcommand("figure1", "majorant tightness table as CSV j,m,k,absF,xi");
    std::string f1_out;
    figure1->add_option("--out", f1_out, "output path (default stdout)");

    // --- forward ---
    auto* forward = app.add_subcommand("forward", "apply F to a coefficient table (JSON in, ND CSV out)");
    std::string fw_eta, fw_out;
    int fw_mmax = 1;
    forward->add_option("--eta", fw_eta, "SpectralPerturbation JSON path")->required();
    forward->add_option("--mmax", fw_mmax, "Fourier truncation")->required();
    forward->add_option("--out", fw_out, "output path (default stdout)");

    // --- recon ---
    auto* recon = app.add_subcommand("recon", "one-step reconstruction (ND CSV in, JSON out)");
    std::string rc_nd, rc_out, rc_sample_out;
    eitlin::recon::ReconConfig rc_cfg;
    int rc_sample_radial = 24, rc_sample_ntheta = 32;
    recon->add_option("--nd", rc_nd, "NDPerturbation CSV path")->required();
    recon->add_option("--mmax", rc_cfg.mmax, "Fourier truncation")->required();
    recon->add_option("--kmax", rc_cfg.kmax, "radial truncation")->required();
    recon->add_option("--jmax", rc_cfg.jmax, "angular truncation")->required();
    recon->add_option("--alpha", rc_cfg.alpha, "ridge weight");
    recon->add_option("--noise-sigma", rc_cfg.noise_sigma,
                      "synthetic noise level added to the data before solving");
    recon->add_option("--seed", rc_cfg.seed, "noise RNG seed");
    recon->add_option("--out", rc_out, "output JSON path (default stdout)");
    recon->add_option("--sample-out", rc_sample_out, "optional synthesized-eta CSV r,theta,re,im");
    recon->add_option("--sample-radial", rc_sample_radial, "radial nodes for --sample-out");
    recon->add_option("--sample-ntheta", rc_sample_ntheta, "angular nodes for --sample-out");

    // --- oracle-check ---
    auto* ocheck = app.add_subcommand("oracle-check", "max |entry - quadrature| over an index box");
    int oc_max_j = 6, oc_max_k = 6, oc_max_m = 10;
    double oc_tol = 1e-9, oc_zero_tol = 1e-12;
    ocheck->add_option("--max-j", oc_max_j, "box max |j|");
    ocheck->add_option("--max-k", oc_max_k, "box max k");
    ocheck->add_option("--max-m", oc_max_m, "box max |m|, |n|");
    ocheck->add_option("--tol", oc_tol, "nonzero-entry tolerance");
    ocheck->add_option("--zero-tol", oc_zero_tol, "structural-zero tolerance");

    // --- embedding-check ---
    auto* echeck = app.add_subcommand("embedding-check", "certify the finite-rank embedding bound");
    int ec_count = 50, ec_rank = 0, ec_trials = 10000;
    double ec_eps = 0.0;
    std::uint64_t ec_seed = 1;
    std::string ec_out;
    echeck->add_option("--count", ec_count, "matrix size N");
    echeck->add_option("--rank", ec_rank, "retained rank M (0 = sweep 1..N-1)");
    echeck->add_option("--eps", ec_eps, "scaling exponent (0 = sweep {0.1, 0.25, 0.5})");
    echeck->add_option("--trials", ec_trials, "number of random matrices");
    echeck->add_option("--seed", ec_seed, "RNG seed");
    echeck->add_option("--out", ec_out, "JSON report path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    // propagate global fallbacks
    if (global_tol >= 0.0) {
        if (verify->count("--tol") == 0) vo.tol = global_tol;
        if (ocheck->count("--tol") == 0) oc_tol = global_tol;
    }
    if (global_seed_set) {
        if (verify->count("--seed") == 0) vo.seed = global_seed;
        if (echeck->count("--seed") == 0) ec_seed = global_seed;
        if (recon->count("--seed") == 0) rc_cfg.seed = global_seed;
    }

    try {
        if (assemble->parsed()) {
            const auto block = eitlin::frechet::assemble_block(as_j, as_rows, as_cols);
            emit(as_out, eitlin::io::write_block_csv(block));
            return kExitPass;
        }

        if (verify->parsed()) {
            apply_config(vo, *verify);
            nlohmann::json report;
            bool pass = true;
            if (vo.suite == "bounds" || vo.suite == "all") {
                report["bounds"] = run_bounds_suite(vo);
                pass = pass && report["bounds"].at("all_pass").get<bool>();
            }
            if (vo.suite == "oracle" || vo.suite == "all") {
                report["oracle"] = run_oracle_suite(vo);
                pass = pass && report["oracle"].at("all_pass").get<bool>();
            }
            if (vo.suite == "embedding" || vo.suite == "all") {
                report["embedding"] = run_embedding_suite(vo);
                pass = pass && report["embedding"].at("all_pass").get<bool>();
            }
            report["all_pass"] = pass;
            emit(vo.out, report.dump(2) + "\n");
            return pass ? kExitPass : kExitCheckFailure;
        }

        if (figure1->parsed()) {
            emit(f1_out, eitlin::io::write_figure1_csv(eitlin::bounds::figure1_data()));
            return kExitPass;
        }

        if (forward->parsed()) {
            std::ifstream in(fw_eta);
            if (!in) throw std::runtime_error("cannot open '" + fw_eta + "'");
            const auto table = eitlin::io::read_spectral_json(in, fw_eta);
            if (table.jmax() > 2 * fw_mmax) {
                std::cerr << "warning: dropped diagonals (|j| > 2*mmax):";
                for (int j = 2 * fw_mmax + 1; j <= table.jmax(); ++j) {
                    std::cerr << " " << -j << " " << j;
                }
                std::cerr << "\n";
            }
            const auto nd = eitlin::frechet::apply(table, fw_mmax);
            emit(fw_out, eitlin::io::write_nd_csv(nd));
            return kExitPass;
        }

        if (recon->parsed()) {
            std::ifstream in(rc_nd);
            if (!in) throw std::runtime_error("cannot open '" + rc_nd + "'");
            auto nd = eitlin::io::read_nd_csv(in, rc_nd, rc_cfg.mmax);
            if (nd.empty()) {
                std::cerr << "warning: empty data, emitting the zero table\n";
            }
            if (rc_cfg.noise_sigma > 0.0) {
                nd = eitlin::recon::add_noise(nd, rc_cfg.noise_sigma, rc_cfg.seed);
            }
            const auto table = eitlin::recon::reconstruct(nd, rc_cfg);
            emit(rc_out, eitlin::io::write_spectral_json(table));
            if (!rc_sample_out.empty()) {
                const eitlin::zernike::DiskGrid grid(rc_sample_radial, rc_sample_ntheta);
                std::vector<std::pair<double, double>> points;
                for (int q = 0; q < grid.radial_count(); ++q) {
                    for (int t = 0; t < grid.ntheta(); ++t) {
                        points.emplace_back(grid.radius(q), grid.theta(t));
                    }
                }
                const auto values = eitlin::zernike::synthesize(table, points);
                std::vector<eitlin::io::DiskSample> samples(points.size());
                for (std::size_t i = 0; i < points.size(); ++i) {
                    samples[i] = {points[i].first, points[i].second, values[i]};
                }
                eitlin::io::write_file(rc_sample_out,
                                       eitlin::io::write_samples_csv(samples));
            }
            return kExitPass;
        }

        if (ocheck->parsed()) {
            const auto res = eitlin::oracle::box_check(oc_max_j, oc_max_k, oc_max_m);
            std::printf("tuples checked:            %ld\n", res.tuples);
            std::printf("max discrepancy (nonzero): %s\n",
                        eitlin::io::format_double(res.max_discrepancy).c_str());
            std::printf("max |structural zero|:     %s\n",
                        eitlin::io::format_double(res.max_structural_zero).c_str());
            const bool pass =
                res.max_discrepancy <= oc_tol && res.max_structural_zero <= oc_zero_tol;
            std::printf("%s\n", pass ? "PASS" : "FAIL");
            return pass ? kExitPass : kExitCheckFailure;
        }

        if (echeck->parsed()) {
            std::vector<int> ranks;
            if (ec_rank > 0) {
                ranks.push_back(ec_rank);
            } else {
                for (int m = 1; m < ec_count; ++m) ranks.push_back(m);
            }
            std::vector<double> eps_values;
            if (ec_eps > 0.0) {
                eps_values.push_back(ec_eps);
            } else {
                eps_values = {0.1, 0.25, 0.5};
            }
            const auto res = eitlin::sobolev::embedding_sweep(ec_trials, ec_count,
                                                              ranks, eps_values, ec_seed);
            const nlohmann::json report = {{"count", ec_count},
                                           {"trials", ec_trials},
                                           {"checks_run", res.checks},
                                           {"worst_ratio", res.worst_ratio},
                                           {"pass", res.pass}};
            emit(ec_out, report.dump(2) + "\n");
            return res.pass ? kExitPass : kExitCheckFailure;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailure;
    }
    return kExitUsage;
}
