#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "bumplab/embedding.hpp"

namespace bumplab {

/// One weight generator: kind plus its parameters. Seeds are mixed with the
/// run's master seed, so a (config, seed) pair fixes every sample.
struct WeightSpec {
    std::string kind; // constant | power | indicator | dyadic_cascade | cellwise_random
    double c = 1.0;
    double exponent = 0.0;
    std::array<double, 2> center{0.0, 0.0};
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::uint64_t seed = 0;
    double total = 1.0;
    int levels = -1; // cascade subdivision cap; -1 follows the tree depth

    Weight instantiate(const DyadicTree& tree, std::uint64_t master_seed) const;
    std::string describe() const;
};

struct WeightPairSpec {
    std::string name;
    WeightSpec sigma;
    WeightSpec w;
};

struct ExponentPair {
    double p = 2.0;
    double q = 2.0;
};

struct Thresholds {
    double c_weak = 8.0;
    double c_emb = 64.0;
    double c_test = 16.0;
    double c_thm12 = 32.0;
    double c_thm13 = 32.0;
    double c_thm14 = 32.0;
};

struct ExperimentConfig {
    int dimension = 1;
    std::vector<int> depths;
    std::vector<double> alphas;
    std::vector<ExponentPair> exponents;
    std::vector<double> deltas;
    std::vector<WeightPairSpec> weight_pairs;
    bool op_maximal = true;
    bool op_integral_dyadic = true;
    bool op_integral_kernel = false;
    bool op_sparse = true;
    bool candidate_indicators = true;
    int ascent_steps = 12;
    Thresholds thresholds;

    void validate() const; // throws config_error
};

/// One evaluated configuration slice. Ratios compare achieved lower norm
/// bounds against the corresponding bump constants; the pass flags apply the
/// configured regression thresholds.
struct ResultRow {
    int row_index = 0;
    int depth = 0;
    int dimension = 1;
    std::string pair_name;
    double alpha = 0.0;
    double p = 0.0;
    double q = 0.0;
    double delta = 0.0;

    double weak_constant = 0.0;
    double onebump_max = 0.0;
    double onebump_int = 0.0;
    double sep_bump = 0.0;
    double sep_bump_dual = 0.0;

    double weak_norm = 0.0;
    double lower_maximal = 0.0;
    double lower_integral = 0.0;
    double lower_kernel = 0.0;
    double lower_sparse = 0.0;
    double beta1 = 0.0;
    double beta2 = 0.0;
    double testing_upper = 0.0;

    double r11 = 0.0; // weak_norm / weak_constant
    double r12 = 0.0; // lower_maximal / onebump_max
    double r13 = 0.0; // lower_integral / onebump_int
    double r14 = 0.0; // lower_integral / (sep^)1/q + dual^(1/p')
    double c_test_ratio = 0.0;

    bool pass_weak = false;
    bool pass_thm12 = false;
    bool pass_thm13 = false;
    bool pass_thm14 = false;
    bool pass_test = false;

    std::int64_t skipped_cubes = 0;
    std::string notes;
    double timing_ms = 0.0; // excluded from canonical output
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& cfg);

/// The in-repo standard suite: constants, |x-1/2|^a powers for
/// a in {-0.5, 0, 0.5, 1}, two indicator pairs and 20 cascade pairs, with
/// (p,q) in {(2,2),(2,3),(1.5,2)}, alpha in {0.25,0.5,0.75}, delta in
/// {0.5,1}, and the shipped regression thresholds.
ExperimentConfig standard_suite_config(std::vector<int> depths);

/// Deterministic given (config, master_seed): one row per
/// (depth, pair, exponent, alpha, delta) in that nesting order.
std::vector<ResultRow> run_suite(const ExperimentConfig& cfg, std::uint64_t master_seed,
                                 unsigned threads);

struct RefinementRow {
    std::string pair_name;
    double p = 0.0, q = 0.0, alpha = 0.0, delta = 0.0;
    std::string quantity;
    std::vector<double> values;     // one per depth
    std::vector<double> rel_deltas; // between consecutive depths
    bool stable = true;             // last delta <= 10%
};

struct RefinementStudy {
    std::vector<int> depths;
    std::vector<RefinementRow> rows;
};

/// Reruns the suite across config.depths (at least two) and tabulates every
/// reported quantity with its relative changes; quantities still moving more
/// than 10% at the finest step are flagged.
RefinementStudy refinement_study(const ExperimentConfig& cfg, std::uint64_t master_seed,
                                 unsigned threads);

std::string rows_to_jsonl(const std::vector<ResultRow>& rows, bool include_timing = false);
std::string rows_to_csv(const std::vector<ResultRow>& rows, bool include_timing = false);
std::string refinement_to_json(const RefinementStudy& study);
std::string refinement_to_csv(const RefinementStudy& study);

} // namespace bumplab
