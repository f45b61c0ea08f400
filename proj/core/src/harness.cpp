#include "bumplab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bumplab/util.hpp"

namespace bumplab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

} // namespace

Weight WeightSpec::instantiate(const DyadicTree& tree, std::uint64_t master_seed) const {
    if (kind == "constant") return constant_weight(tree, c);
    if (kind == "power") return power_weight(tree, exponent, center);
    if (kind == "indicator") return indicator_weight(tree, lo, hi);
    if (kind == "dyadic_cascade")
        return cascade_weight(tree, derive_seed(master_seed, seed), total, levels);
    if (kind == "cellwise_random")
        return random_weight(tree, derive_seed(master_seed, seed), lo[0], hi[0] > lo[0] ? hi[0] : 1.0);
    throw config_error("unknown weight kind '" + kind + "'");
}

std::string WeightSpec::describe() const {
    std::ostringstream os;
    os << kind;
    if (kind == "constant") os << "(" << c << ")";
    if (kind == "power") os << "(a=" << exponent << ",x0=" << center[0] << ")";
    if (kind == "indicator") os << "[" << lo[0] << "," << hi[0] << ")";
    if (kind == "dyadic_cascade" || kind == "cellwise_random") os << "(seed=" << seed << ")";
    return os.str();
}

void ExperimentConfig::validate() const {
    if (dimension != 1 && dimension != 2) throw config_error("dimension must be 1 or 2");
    if (depths.empty()) throw config_error("depths must be nonempty");
    for (int d : depths)
        if (d < 0 || dimension * d > 24) throw config_error("depth outside the dim*depth <= 24 guard");
    if (alphas.empty()) throw config_error("alphas must be nonempty");
    for (double a : alphas)
        if (!(a >= 0.0 && a < dimension)) throw config_error("alpha outside [0, n)");
    if (exponents.empty()) throw config_error("exponents must be nonempty");
    for (const auto& e : exponents) {
        if (!(e.p > 1.0 && e.p <= e.q && std::isfinite(e.q)))
            throw config_error("exponent pairs need 1 < p <= q < inf");
    }
    if (deltas.empty()) throw config_error("deltas must be nonempty");
    for (double d : deltas)
        if (!(d > 0.0)) throw config_error("delta must be positive");
    if (weight_pairs.empty()) throw config_error("weight_pairs must be nonempty");
    const auto check_spec = [](const WeightSpec& s) {
        if (s.kind != "constant" && s.kind != "power" && s.kind != "indicator" &&
            s.kind != "dyadic_cascade" && s.kind != "cellwise_random")
            throw config_error("unknown weight kind '" + s.kind + "'");
        if (s.kind == "power" && !(s.exponent > -1.0))
            throw config_error("power exponent must exceed -1");
        if (s.kind == "constant" && !(s.c >= 0.0)) throw config_error("constant weight must be >= 0");
    };
    for (const auto& pr : weight_pairs) {
        check_spec(pr.sigma);
        check_spec(pr.w);
    }
    if (ascent_steps < 0) throw config_error("ascent_steps must be >= 0");
    const double th[] = {thresholds.c_weak,  thresholds.c_emb,   thresholds.c_test,
                         thresholds.c_thm12, thresholds.c_thm13, thresholds.c_thm14};
    for (double t : th)
        if (!(t > 0.0)) throw config_error("thresholds must be positive");
}

namespace {

WeightSpec weight_spec_from_json(const json& j) {
    WeightSpec s;
    s.kind = j.at("kind").get<std::string>();
    if (j.contains("c")) s.c = j.at("c").get<double>();
    if (j.contains("exponent")) s.exponent = j.at("exponent").get<double>();
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("total")) s.total = j.at("total").get<double>();
    if (j.contains("levels")) s.levels = j.at("levels").get<int>();
    const auto read_pair = [&](const char* key, std::array<double, 2>& out) {
        if (!j.contains(key)) return;
        const auto v = j.at(key).get<std::vector<double>>();
        for (std::size_t a = 0; a < v.size() && a < 2; ++a) out[a] = v[a];
    };
    read_pair("center", s.center);
    read_pair("lo", s.lo);
    read_pair("hi", s.hi);
    return s;
}

json weight_spec_to_json(const WeightSpec& s) {
    ordered_json j;
    j["kind"] = s.kind;
    if (s.kind == "constant") j["c"] = s.c;
    if (s.kind == "power") {
        j["exponent"] = s.exponent;
        j["center"] = {s.center[0], s.center[1]};
    }
    if (s.kind == "indicator") {
        j["lo"] = {s.lo[0], s.lo[1]};
        j["hi"] = {s.hi[0], s.hi[1]};
    }
    if (s.kind == "dyadic_cascade") {
        j["seed"] = s.seed;
        j["total"] = s.total;
        j["levels"] = s.levels;
    }
    if (s.kind == "cellwise_random") {
        j["seed"] = s.seed;
        j["lo"] = {s.lo[0], s.lo[1]};
        j["hi"] = {s.hi[0], s.hi[1]};
    }
    return j;
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        // byte offset -> line number for an anchored message
        std::size_t line = 1;
        for (std::size_t i = 0; i < e.byte && i < json_text.size(); ++i)
            if (json_text[i] == '\n') ++line;
        throw config_error("line " + std::to_string(line) + ": " + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.dimension = j.value("dimension", 1);
        cfg.depths = j.at("depths").get<std::vector<int>>();
        cfg.alphas = j.at("alphas").get<std::vector<double>>();
        for (const auto& e : j.at("exponents"))
            cfg.exponents.push_back({e.at("p").get<double>(), e.at("q").get<double>()});
        cfg.deltas = j.at("deltas").get<std::vector<double>>();
        for (const auto& pr : j.at("weight_pairs")) {
            WeightPairSpec ps;
            ps.name = pr.value("name", "pair");
            ps.sigma = weight_spec_from_json(pr.at("sigma"));
            ps.w = weight_spec_from_json(pr.at("w"));
            cfg.weight_pairs.push_back(std::move(ps));
        }
        if (j.contains("operators")) {
            cfg.op_maximal = cfg.op_integral_dyadic = cfg.op_integral_kernel = cfg.op_sparse = false;
            for (const auto& op : j.at("operators")) {
                const std::string name = op.get<std::string>();
                if (name == "maximal")
                    cfg.op_maximal = true;
                else if (name == "integral_dyadic")
                    cfg.op_integral_dyadic = true;
                else if (name == "integral_kernel")
                    cfg.op_integral_kernel = true;
                else if (name == "sparse")
                    cfg.op_sparse = true;
                else
                    throw config_error("unknown operator selection '" + name + "'");
            }
        }
        if (j.contains("candidates")) {
            cfg.candidate_indicators = j.at("candidates").value("indicators", true);
            cfg.ascent_steps = j.at("candidates").value("ascent_steps", 12);
        }
        if (j.contains("thresholds")) {
            const auto& t = j.at("thresholds");
            cfg.thresholds.c_weak = t.value("C_weak", cfg.thresholds.c_weak);
            cfg.thresholds.c_emb = t.value("C_emb", cfg.thresholds.c_emb);
            cfg.thresholds.c_test = t.value("C_test", cfg.thresholds.c_test);
            cfg.thresholds.c_thm12 = t.value("C_thm12", cfg.thresholds.c_thm12);
            cfg.thresholds.c_thm13 = t.value("C_thm13", cfg.thresholds.c_thm13);
            cfg.thresholds.c_thm14 = t.value("C_thm14", cfg.thresholds.c_thm14);
        }
    } catch (const json::exception& e) {
        throw config_error(std::string("config field error: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const config_error& e) {
        throw config_error(path + ": " + e.what());
    }
}

std::string config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["schema_version"] = 1;
    j["dimension"] = cfg.dimension;
    j["depths"] = cfg.depths;
    j["alphas"] = cfg.alphas;
    auto exps = ordered_json::array();
    for (const auto& e : cfg.exponents) exps.push_back({{"p", e.p}, {"q", e.q}});
    j["exponents"] = std::move(exps);
    j["deltas"] = cfg.deltas;
    auto pairs = ordered_json::array();
    for (const auto& pr : cfg.weight_pairs) {
        ordered_json pj;
        pj["name"] = pr.name;
        pj["sigma"] = weight_spec_to_json(pr.sigma);
        pj["w"] = weight_spec_to_json(pr.w);
        pairs.push_back(std::move(pj));
    }
    j["weight_pairs"] = std::move(pairs);
    std::vector<std::string> ops;
    if (cfg.op_maximal) ops.push_back("maximal");
    if (cfg.op_integral_dyadic) ops.push_back("integral_dyadic");
    if (cfg.op_integral_kernel) ops.push_back("integral_kernel");
    if (cfg.op_sparse) ops.push_back("sparse");
    j["operators"] = ops;
    j["candidates"] = {{"indicators", cfg.candidate_indicators}, {"ascent_steps", cfg.ascent_steps}};
    j["thresholds"] = {{"C_weak", cfg.thresholds.c_weak},   {"C_emb", cfg.thresholds.c_emb},
                       {"C_test", cfg.thresholds.c_test},   {"C_thm12", cfg.thresholds.c_thm12},
                       {"C_thm13", cfg.thresholds.c_thm13}, {"C_thm14", cfg.thresholds.c_thm14}};
    return j.dump(2);
}

ExperimentConfig standard_suite_config(std::vector<int> depths) {
    ExperimentConfig cfg;
    cfg.dimension = 1;
    cfg.depths = std::move(depths);
    cfg.alphas = {0.25, 0.5, 0.75};
    cfg.exponents = {{2.0, 2.0}, {2.0, 3.0}, {1.5, 2.0}};
    cfg.deltas = {0.5, 1.0};

    const auto constant = [](double c) {
        WeightSpec s;
        s.kind = "constant";
        s.c = c;
        return s;
    };
    const auto power = [](double a, double x0) {
        WeightSpec s;
        s.kind = "power";
        s.exponent = a;
        s.center = {x0, 0.0};
        return s;
    };
    const auto indicator = [](double lo, double hi) {
        WeightSpec s;
        s.kind = "indicator";
        s.lo = {lo, 0.0};
        s.hi = {hi, 1.0};
        return s;
    };
    const auto cascade = [](std::uint64_t seed) {
        WeightSpec s;
        s.kind = "dyadic_cascade";
        s.seed = seed;
        s.levels = 5; // fixed measure across the depth sweep
        return s;
    };

    cfg.weight_pairs.push_back({"lebesgue", constant(1.0), constant(1.0)});
    cfg.weight_pairs.push_back({"const_2_half", constant(2.0), constant(0.5)});
    for (double a : {-0.5, 0.0, 0.5, 1.0}) {
        std::ostringstream name;
        name << "power_" << a;
        cfg.weight_pairs.push_back({name.str(), power(a, 0.5), power(-a / 2.0, 0.0)});
    }
    cfg.weight_pairs.push_back({"ind_left_half", indicator(0.0, 0.5), constant(1.0)});
    cfg.weight_pairs.push_back({"ind_middle", constant(1.0), indicator(0.25, 0.75)});
    for (std::uint64_t s = 1; s <= 20; ++s) {
        std::ostringstream name;
        name << "cascade_" << s;
        cfg.weight_pairs.push_back({name.str(), cascade(s), cascade(s + 1000)});
    }

    cfg.op_maximal = true;
    cfg.op_integral_dyadic = true;
    cfg.op_integral_kernel = false;
    cfg.op_sparse = true;
    cfg.candidate_indicators = true;
    cfg.ascent_steps = 12;
    return cfg;
}

namespace {

struct RowTask {
    int row_index;
    int depth;
    std::size_t pair;
    std::size_t exponent;
    std::size_t alpha;
    std::size_t delta;
};

} // namespace

std::vector<ResultRow> run_suite(const ExperimentConfig& cfg, std::uint64_t master_seed,
                                 unsigned threads) {
    cfg.validate();

    // trees and weights built once per (depth, pair); rows read them only
    std::deque<DyadicTree> trees;
    std::deque<std::pair<Weight, Weight>> weights; // indexed depth-major
    for (int depth : cfg.depths) {
        trees.emplace_back(cfg.dimension, depth);
        for (const auto& pr : cfg.weight_pairs)
            weights.emplace_back(pr.sigma.instantiate(trees.back(), master_seed),
                                 pr.w.instantiate(trees.back(), master_seed));
    }

    std::vector<RowTask> tasks;
    int row_index = 0;
    for (std::size_t di = 0; di < cfg.depths.size(); ++di)
        for (std::size_t pi = 0; pi < cfg.weight_pairs.size(); ++pi)
            for (std::size_t ei = 0; ei < cfg.exponents.size(); ++ei)
                for (std::size_t ai = 0; ai < cfg.alphas.size(); ++ai)
                    for (std::size_t li = 0; li < cfg.deltas.size(); ++li)
                        tasks.push_back({row_index++, cfg.depths[di], pi, ei, ai, li});

    std::vector<ResultRow> rows(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t ti) {
        const RowTask& task = tasks[ti];
        const auto t0 = std::chrono::steady_clock::now();
        const std::size_t depth_slot =
            static_cast<std::size_t>(std::find(cfg.depths.begin(), cfg.depths.end(), task.depth) -
                                     cfg.depths.begin());
        const DyadicTree& tree = trees[depth_slot];
        const auto& [sigma, w] = weights[depth_slot * cfg.weight_pairs.size() + task.pair];

        ResultRow row;
        row.row_index = task.row_index;
        row.depth = task.depth;
        row.dimension = cfg.dimension;
        row.pair_name = cfg.weight_pairs[task.pair].name;
        row.alpha = cfg.alphas[task.alpha];
        row.p = cfg.exponents[task.exponent].p;
        row.q = cfg.exponents[task.exponent].q;
        row.delta = cfg.deltas[task.delta];

        const ExponentConfig ec{cfg.dimension, row.alpha, row.p, row.q};
        std::string notes;

        try {
            const SweepOptions sweep_opts{true, false, 1};
            const BumpReport weak = weak_constant(sigma, w, ec, sweep_opts);
            row.weak_constant = weak.constant;
            row.skipped_cubes = static_cast<std::int64_t>(weak.skipped);
            row.onebump_max =
                onebump_max_constant(sigma, w, ec, EpsilonSpec::onebump(ec.q, row.delta), sweep_opts)
                    .constant;
            row.onebump_int = onebump_int_constant(sigma, w, ec, EpsilonSpec::onebump(ec.p, row.delta),
                                                   EpsilonSpec::onebump(ec.q_conj(), row.delta),
                                                   sweep_opts)
                                  .constant;
            row.sep_bump =
                sep_bump_constant(sigma, w, ec, EpsilonSpec::separated(ec.q, row.delta), sweep_opts)
                    .constant;
            row.sep_bump_dual = sep_bump_dual(sigma, w, ec, row.delta, sweep_opts).constant;

            const CandidateSet candidates{&tree, true, cfg.candidate_indicators, {}};

            if (cfg.op_maximal) {
                const OperatorClosure Tm = make_dyadic_maximal_closure(tree, ec.alpha, sigma, w);
                row.weak_norm = weak_norm(Tm, sigma, w, ec, candidates);
                row.lower_maximal =
                    strong_norm_lower(Tm, sigma, w, ec, candidates, cfg.ascent_steps).lower;
            }
            if (cfg.op_integral_dyadic && ec.alpha > 0.0) {
                const OperatorClosure Ti = make_dyadic_integral_closure(tree, ec.alpha, sigma, w);
                row.lower_integral =
                    strong_norm_lower(Ti, sigma, w, ec, candidates, cfg.ascent_steps).lower;
            }
            if (cfg.op_integral_kernel && ec.alpha > 0.0) {
                const OperatorClosure Tk = make_kernel_closure(tree, ec.alpha, sigma, w);
                row.lower_kernel =
                    strong_norm_lower(Tk, sigma, w, ec, candidates, cfg.ascent_steps).lower;
            }
            if (cfg.op_sparse) {
                if (sigma.fn().total_mass() > 0.0) {
                    const SparseFamily family =
                        build_stopping_plain(sigma.fn(), tree, tree.root());
                    const SparseOperatorSpec spec{&family, ec.alpha};
                    const OperatorClosure Ts = make_sparse_closure(spec, sigma, w);
                    const NormBracket bracket = strong_norm_lower(Ts, sigma, w, ec, candidates,
                                                                  cfg.ascent_steps, &family);
                    row.lower_sparse = bracket.lower;
                    row.beta1 = bracket.beta1;
                    row.beta2 = bracket.beta2;
                    row.testing_upper = bracket.testing_upper;
                    row.c_test_ratio =
                        bracket.testing_upper > 0.0 ? bracket.lower / bracket.testing_upper : kNaN;
                } else {
                    notes += "sigma_trivial_no_sparse_family;";
                }
            }

            const auto ratio = [&notes](double num, double den, const char* label) {
                if (den > 0.0) return num / den;
                notes += std::string(label) + "_denominator_zero;";
                return kNaN;
            };
            // the theorem ratios compare the one shared bracket (the sparse
            // surrogate every strong proof reduces to) against the bumps
            if (cfg.op_maximal) row.r11 = ratio(row.weak_norm, row.weak_constant, "r11");
            if (cfg.op_sparse) {
                row.r12 = ratio(row.lower_sparse, row.onebump_max, "r12");
                if (ec.alpha > 0.0) {
                    row.r13 = ratio(row.lower_sparse, row.onebump_int, "r13");
                    row.r14 = ratio(row.lower_sparse,
                                    std::pow(row.sep_bump, 1.0 / ec.q) +
                                        std::pow(row.sep_bump_dual, 1.0 / ec.p_conj()),
                                    "r14");
                }
            }
            row.pass_weak = !cfg.op_maximal || row.r11 <= cfg.thresholds.c_weak;
            row.pass_thm12 = !cfg.op_sparse || row.r12 <= cfg.thresholds.c_thm12;
            row.pass_thm13 = !cfg.op_sparse || ec.alpha == 0.0 || row.r13 <= cfg.thresholds.c_thm13;
            row.pass_thm14 = !cfg.op_sparse || ec.alpha == 0.0 || row.r14 <= cfg.thresholds.c_thm14;
            row.pass_test = !cfg.op_sparse || !(row.c_test_ratio > cfg.thresholds.c_test);
        } catch (const error& e) {
            notes += std::string("error:") + e.what() + ";";
            row.pass_weak = row.pass_thm12 = row.pass_thm13 = row.pass_thm14 = row.pass_test = false;
        }
        row.notes = notes;
        row.timing_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rows[static_cast<std::size_t>(task.row_index)] = std::move(row);
    });
    return rows;
}

RefinementStudy refinement_study(const ExperimentConfig& cfg, std::uint64_t master_seed,
                                 unsigned threads) {
    if (cfg.depths.size() < 2) throw config_error("refinement study needs at least two depths");
    const std::vector<ResultRow> rows = run_suite(cfg, master_seed, threads);

    RefinementStudy study;
    study.depths = cfg.depths;
    const std::size_t per_depth = rows.size() / cfg.depths.size();

    static const std::vector<std::pair<std::string, double ResultRow::*>> kQuantities = {
        {"weak_constant", &ResultRow::weak_constant},
        {"onebump_max", &ResultRow::onebump_max},
        {"onebump_int", &ResultRow::onebump_int},
        {"sep_bump", &ResultRow::sep_bump},
        {"sep_bump_dual", &ResultRow::sep_bump_dual},
        {"weak_norm", &ResultRow::weak_norm},
        {"lower_maximal", &ResultRow::lower_maximal},
        {"lower_integral", &ResultRow::lower_integral},
        {"r11", &ResultRow::r11},
        {"r12", &ResultRow::r12},
        {"r13", &ResultRow::r13},
        {"r14", &ResultRow::r14},
    };

    for (std::size_t slice = 0; slice < per_depth; ++slice) {
        const ResultRow& base = rows[slice];
        for (const auto& [name, member] : kQuantities) {
            RefinementRow rr;
            rr.pair_name = base.pair_name;
            rr.p = base.p;
            rr.q = base.q;
            rr.alpha = base.alpha;
            rr.delta = base.delta;
            rr.quantity = name;
            for (std::size_t di = 0; di < cfg.depths.size(); ++di)
                rr.values.push_back(rows[di * per_depth + slice].*member);
            for (std::size_t di = 1; di < rr.values.size(); ++di) {
                const double a = rr.values[di - 1], b = rr.values[di];
                const double denom = std::max(std::abs(a), 1e-300);
                rr.rel_deltas.push_back(std::abs(b - a) / denom);
            }
            rr.stable = rr.rel_deltas.empty() || rr.rel_deltas.back() <= 0.10;
            study.rows.push_back(std::move(rr));
        }
    }
    return study;
}

namespace {

ordered_json row_to_json(const ResultRow& r, bool include_timing) {
    ordered_json j;
    j["schema_version"] = 1;
    j["row"] = r.row_index;
    j["depth"] = r.depth;
    j["dimension"] = r.dimension;
    j["pair"] = r.pair_name;
    j["alpha"] = r.alpha;
    j["p"] = r.p;
    j["q"] = r.q;
    j["delta"] = r.delta;
    j["weak_constant"] = r.weak_constant;
    j["onebump_max"] = r.onebump_max;
    j["onebump_int"] = r.onebump_int;
    j["sep_bump"] = r.sep_bump;
    j["sep_bump_dual"] = r.sep_bump_dual;
    j["weak_norm"] = r.weak_norm;
    j["lower_maximal"] = r.lower_maximal;
    j["lower_integral"] = r.lower_integral;
    j["lower_kernel"] = r.lower_kernel;
    j["lower_sparse"] = r.lower_sparse;
    j["beta1"] = r.beta1;
    j["beta2"] = r.beta2;
    j["testing_upper"] = r.testing_upper;
    j["r11"] = r.r11;
    j["r12"] = r.r12;
    j["r13"] = r.r13;
    j["r14"] = r.r14;
    j["c_test_ratio"] = r.c_test_ratio;
    j["pass_weak"] = r.pass_weak;
    j["pass_thm12"] = r.pass_thm12;
    j["pass_thm13"] = r.pass_thm13;
    j["pass_thm14"] = r.pass_thm14;
    j["pass_test"] = r.pass_test;
    j["skipped_cubes"] = r.skipped_cubes;
    j["notes"] = r.notes;
    if (include_timing) j["timing_ms"] = r.timing_ms;
    return j;
}

const char* kCsvColumns[] = {
    "schema_version", "row",          "depth",        "dimension",   "pair",
    "alpha",          "p",            "q",            "delta",       "weak_constant",
    "onebump_max",    "onebump_int",  "sep_bump",     "sep_bump_dual", "weak_norm",
    "lower_maximal",  "lower_integral", "lower_kernel", "lower_sparse", "beta1",
    "beta2",          "testing_upper", "r11",          "r12",         "r13",
    "r14",            "c_test_ratio", "pass_weak",    "pass_thm12",  "pass_thm13",
    "pass_thm14",     "pass_test",    "skipped_cubes", "notes"};

} // namespace

std::string rows_to_jsonl(const std::vector<ResultRow>& rows, bool include_timing) {
    std::string out;
    for (const auto& r : rows) {
        out += row_to_json(r, include_timing).dump();
        out += '\n';
    }
    return out;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool include_timing) {
    std::ostringstream os;
    bool first = true;
    for (const char* col : kCsvColumns) {
        if (!first) os << ',';
        os << col;
        first = false;
    }
    if (include_timing) os << ",timing_ms";
    os << '\n';
    for (const auto& r : rows) {
        os << 1 << ',' << r.row_index << ',' << r.depth << ',' << r.dimension << ',' << r.pair_name
           << ',' << format_g17(r.alpha) << ',' << format_g17(r.p) << ',' << format_g17(r.q) << ','
           << format_g17(r.delta) << ',' << format_g17(r.weak_constant) << ','
           << format_g17(r.onebump_max) << ',' << format_g17(r.onebump_int) << ','
           << format_g17(r.sep_bump) << ',' << format_g17(r.sep_bump_dual) << ','
           << format_g17(r.weak_norm) << ',' << format_g17(r.lower_maximal) << ','
           << format_g17(r.lower_integral) << ',' << format_g17(r.lower_kernel) << ','
           << format_g17(r.lower_sparse) << ',' << format_g17(r.beta1) << ','
           << format_g17(r.beta2) << ',' << format_g17(r.testing_upper) << ','
           << format_g17(r.r11) << ',' << format_g17(r.r12) << ',' << format_g17(r.r13) << ','
           << format_g17(r.r14) << ',' << format_g17(r.c_test_ratio) << ','
           << (r.pass_weak ? 1 : 0) << ',' << (r.pass_thm12 ? 1 : 0) << ',' << (r.pass_thm13 ? 1 : 0)
           << ',' << (r.pass_thm14 ? 1 : 0) << ',' << (r.pass_test ? 1 : 0) << ','
           << r.skipped_cubes << ',' << r.notes;
        if (include_timing) os << ',' << format_g17(r.timing_ms);
        os << '\n';
    }
    return os.str();
}

std::string refinement_to_json(const RefinementStudy& study) {
    ordered_json j;
    j["schema_version"] = 1;
    j["depths"] = study.depths;
    auto rows = ordered_json::array();
    for (const auto& r : study.rows) {
        ordered_json rj;
        rj["pair"] = r.pair_name;
        rj["p"] = r.p;
        rj["q"] = r.q;
        rj["alpha"] = r.alpha;
        rj["delta"] = r.delta;
        rj["quantity"] = r.quantity;
        rj["values"] = r.values;
        rj["rel_deltas"] = r.rel_deltas;
        rj["stable"] = r.stable;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j.dump();
}

std::string refinement_to_csv(const RefinementStudy& study) {
    std::ostringstream os;
    os << "pair,p,q,alpha,delta,quantity";
    for (int d : study.depths) os << ",L" << d;
    for (std::size_t i = 1; i < study.depths.size(); ++i)
        os << ",delta_" << study.depths[i - 1] << "_" << study.depths[i];
    os << ",stable\n";
    for (const auto& r : study.rows) {
        os << r.pair_name << ',' << format_g17(r.p) << ',' << format_g17(r.q) << ','
           << format_g17(r.alpha) << ',' << format_g17(r.delta) << ',' << r.quantity;
        for (double v : r.values) os << ',' << format_g17(v);
        for (double v : r.rel_deltas) os << ',' << format_g17(v);
        os << ',' << (r.stable ? 1 : 0) << '\n';
    }
    return os.str();
}

} // namespace bumplab
