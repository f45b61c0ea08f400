// Command-line front end: verify / bumps / norms / sweep / refine.
//
// Exit codes: 0 success, 1 verification failure, 2 config error, 3 capacity
// error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "bumplab/harness.hpp"
#include "bumplab/selfcheck.hpp"

namespace {

using bumplab::ExperimentConfig;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::uint64_t seed = 1;
    unsigned threads = 1;
    int depth = -1;
};

void write_output(const CommonOpts& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path, std::ios::binary);
    if (!out) throw bumplab::config_error("cannot open output file '" + opts.out_path + "'");
    out << text;
}

ExperimentConfig resolve_config(const CommonOpts& opts) {
    if (opts.config_path.empty()) throw bumplab::config_error("--config is required");
    ExperimentConfig cfg = bumplab::load_config(opts.config_path);
    if (opts.depth >= 0) cfg.depths = {opts.depth};
    cfg.validate();
    return cfg;
}

int cmd_verify(const CommonOpts& opts) {
    const int depth = opts.depth >= 0 ? opts.depth : 6;
    bool all_pass = true;
    for (const auto& check : bumplab::structural_invariant_checks(depth, opts.seed)) {
        std::printf("[%s] %s: %s\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                    check.detail.c_str());
        all_pass = all_pass && check.pass;
    }
    for (const auto& check : bumplab::run_all_checks(opts.seed, opts.threads)) {
        std::printf("[%s] %s: %s\n", check.pass ? "PASS" : "FAIL", check.name.c_str(),
                    check.detail.c_str());
        all_pass = all_pass && check.pass;
    }
    return all_pass ? 0 : 1;
}

int cmd_sweep(const CommonOpts& opts, bool timing) {
    const ExperimentConfig cfg = resolve_config(opts);
    const auto rows = bumplab::run_suite(cfg, opts.seed, opts.threads);
    write_output(opts, opts.format == "csv" ? bumplab::rows_to_csv(rows, timing)
                                            : bumplab::rows_to_jsonl(rows, timing));
    return 0;
}

int cmd_refine(const CommonOpts& opts) {
    const ExperimentConfig cfg = resolve_config(opts);
    const auto study = bumplab::refinement_study(cfg, opts.seed, opts.threads);
    write_output(opts, opts.format == "csv" ? bumplab::refinement_to_csv(study)
                                            : bumplab::refinement_to_json(study) + "\n");
    return 0;
}

int cmd_bumps(const CommonOpts& opts) {
    using namespace bumplab;
    const ExperimentConfig cfg = resolve_config(opts);
    std::string out;
    const bool csv = opts.format == "csv";
    if (csv)
        out += "depth,pair,alpha,p,q,delta,weak_constant,onebump_max,onebump_int,sep_bump,"
               "sep_bump_dual,argmax_grid,argmax_level,skipped\n";
    for (const int depth : cfg.depths) {
        const DyadicTree tree(cfg.dimension, depth);
        for (const auto& pr : cfg.weight_pairs) {
            const Weight sigma = pr.sigma.instantiate(tree, opts.seed);
            const Weight w = pr.w.instantiate(tree, opts.seed);
            for (const auto& e : cfg.exponents)
                for (const double alpha : cfg.alphas)
                    for (const double delta : cfg.deltas) {
                        const ExponentConfig ec{cfg.dimension, alpha, e.p, e.q};
                        const SweepOptions sw{true, false, opts.threads};
                        const BumpReport weak = weak_constant(sigma, w, ec, sw);
                        const BumpReport bmax = onebump_max_constant(
                            sigma, w, ec, EpsilonSpec::onebump(e.q, delta), sw);
                        const BumpReport bint = onebump_int_constant(
                            sigma, w, ec, EpsilonSpec::onebump(e.p, delta),
                            EpsilonSpec::onebump(ec.q_conj(), delta), sw);
                        const BumpReport sep = sep_bump_constant(
                            sigma, w, ec, EpsilonSpec::separated(e.q, delta), sw);
                        const BumpReport dual = sep_bump_dual(sigma, w, ec, delta, sw);
                        if (csv) {
                            char line[512];
                            std::snprintf(line, sizeof(line),
                                          "%d,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                                          "%.17g,%d,%d,%zu\n",
                                          depth, pr.name.c_str(), alpha, e.p, e.q, delta,
                                          weak.constant, bmax.constant, bint.constant, sep.constant,
                                          dual.constant, weak.argmax.grid, weak.argmax.level,
                                          weak.skipped);
                            out += line;
                        } else {
                            nlohmann::ordered_json j;
                            j["schema_version"] = 1;
                            j["depth"] = depth;
                            j["pair"] = pr.name;
                            j["alpha"] = alpha;
                            j["p"] = e.p;
                            j["q"] = e.q;
                            j["delta"] = delta;
                            j["weak"] = nlohmann::ordered_json::parse(bump_report_to_json(weak));
                            j["onebump_max"] =
                                nlohmann::ordered_json::parse(bump_report_to_json(bmax));
                            j["onebump_int"] =
                                nlohmann::ordered_json::parse(bump_report_to_json(bint));
                            j["sep_bump"] = nlohmann::ordered_json::parse(bump_report_to_json(sep));
                            j["sep_bump_dual"] =
                                nlohmann::ordered_json::parse(bump_report_to_json(dual));
                            out += j.dump();
                            out += '\n';
                        }
                    }
        }
    }
    write_output(opts, out);
    return 0;
}

int cmd_norms(const CommonOpts& opts) {
    using namespace bumplab;
    const ExperimentConfig cfg = resolve_config(opts);
    std::string out;
    const bool csv = opts.format == "csv";
    if (csv) out += "depth,pair,alpha,p,q,operator,lower,beta1,beta2,testing_upper,witness\n";
    for (const int depth : cfg.depths) {
        const DyadicTree tree(cfg.dimension, depth);
        for (const auto& pr : cfg.weight_pairs) {
            const Weight sigma = pr.sigma.instantiate(tree, opts.seed);
            const Weight w = pr.w.instantiate(tree, opts.seed);
            for (const auto& e : cfg.exponents)
                for (const double alpha : cfg.alphas) {
                    const ExponentConfig ec{cfg.dimension, alpha, e.p, e.q};
                    const CandidateSet cands{&tree, true, cfg.candidate_indicators, {}};
                    std::vector<std::pair<std::string, NormBracket>> brackets;
                    if (cfg.op_maximal)
                        brackets.emplace_back(
                            "maximal",
                            strong_norm_lower(make_dyadic_maximal_closure(tree, alpha, sigma, w),
                                              sigma, w, ec, cands, cfg.ascent_steps));
                    if (cfg.op_integral_dyadic && alpha > 0.0)
                        brackets.emplace_back(
                            "integral_dyadic",
                            strong_norm_lower(make_dyadic_integral_closure(tree, alpha, sigma, w),
                                              sigma, w, ec, cands, cfg.ascent_steps));
                    if (cfg.op_integral_kernel && alpha > 0.0)
                        brackets.emplace_back(
                            "integral_kernel",
                            strong_norm_lower(make_kernel_closure(tree, alpha, sigma, w), sigma, w,
                                              ec, cands, cfg.ascent_steps));
                    std::optional<SparseFamily> family;
                    if (cfg.op_sparse && sigma.fn().total_mass() > 0.0) {
                        family = build_stopping_plain(sigma.fn(), tree, tree.root());
                        const SparseOperatorSpec spec{&*family, alpha};
                        brackets.emplace_back(
                            "sparse", strong_norm_lower(make_sparse_closure(spec, sigma, w), sigma,
                                                        w, ec, cands, cfg.ascent_steps, &*family));
                    }
                    for (const auto& [op_name, bracket] : brackets) {
                        if (csv) {
                            char line[512];
                            std::snprintf(line, sizeof(line),
                                          "%d,%s,%.17g,%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g,%s\n",
                                          depth, pr.name.c_str(), alpha, e.p, e.q, op_name.c_str(),
                                          bracket.lower, bracket.beta1, bracket.beta2,
                                          bracket.testing_upper, bracket.witness.c_str());
                            out += line;
                        } else {
                            nlohmann::ordered_json j;
                            j["schema_version"] = 1;
                            j["depth"] = depth;
                            j["pair"] = pr.name;
                            j["alpha"] = alpha;
                            j["p"] = e.p;
                            j["q"] = e.q;
                            j["operator"] = op_name;
                            j["bracket"] =
                                nlohmann::ordered_json::parse(norm_bracket_to_json(bracket));
                            out += j.dump();
                            out += '\n';
                        }
                    }
                }
        }
    }
    write_output(opts, out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-weight bump constants for fractional maximal and integral operators"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool timing = false;
    const auto add_common = [&](CLI::App* cmd, bool needs_config) {
        if (needs_config) cmd->add_option("--config", opts.config_path, "experiment config (JSON)");
        cmd->add_option("--out", opts.out_path, "output path (default stdout)");
        cmd->add_option("--format", opts.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--seed", opts.seed, "master seed mixed into every generator");
        cmd->add_option("--threads", opts.threads, "worker threads");
        cmd->add_option("--depth", opts.depth, "override the config depth list with one level");
    };

    CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite (exit 0/1)");
    add_common(verify, false);
    CLI::App* bumps = app.add_subcommand("bumps", "bump-constant reports for a config");
    add_common(bumps, true);
    CLI::App* norms = app.add_subcommand("norms", "norm brackets for a config");
    add_common(norms, true);
    CLI::App* sweep = app.add_subcommand("sweep", "full suite run to JSON lines / CSV");
    add_common(sweep, true);
    sweep->add_flag("--timing", timing, "include per-row timings (breaks byte determinism)");
    CLI::App* refine = app.add_subcommand("refine", "refinement study across config depths");
    add_common(refine, true);

    try {
        app.parse(argc, argv);
        if (verify->parsed()) return cmd_verify(opts);
        if (bumps->parsed()) return cmd_bumps(opts);
        if (norms->parsed()) return cmd_norms(opts);
        if (sweep->parsed()) return cmd_sweep(opts, timing);
        if (refine->parsed()) return cmd_refine(opts);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const bumplab::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bumplab::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
