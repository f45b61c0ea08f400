#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bumplab/bumps.hpp"
#include "bumplab/operators.hpp"

namespace bumplab {

/// Cube-indexed nonnegative coefficients a_Q against a reference measure mu;
/// drives the discrete embedding machinery. The a-array is indexed by the
/// tree's linear cube ids.
struct CarlesonSequence {
    const DyadicTree* tree = nullptr;
    std::vector<double> a;
    const Weight* mu = nullptr;
    double p = 2.0;
    double q = 2.0;
};

/// max over cubes P of mu(P)^(-q/p) sum_{Q inside P} a_Q; +infinity when some
/// massless cube carries coefficients.
double carleson_constant(const CarlesonSequence& seq);

struct EmbeddingReport {
    double ratio = 0.0;                    // sum a_Q <f>^q / ||f||^q
    double level_set_max_ratio = 0.0;      // worst lhs/rhs over attained levels
    std::size_t levels_checked = 0;
    std::size_t skipped_zero_mass = 0;
};

/// Embedding ratio plus the exact level-set comparison
/// lambda^q nu({Tf > lambda}) vs (lambda^p mu({Mf > lambda}))^(q/p)
/// at every attained value of Tf. Requires 1 < p <= q < inf and f not
/// mu-trivial.
EmbeddingReport embedding_report(const CarlesonSequence& seq, const GridFunction& f);

struct TestingConstants {
    double beta1 = 0.0;
    double beta2 = 0.0;
    std::size_t skipped = 0; // members with zero reference mass
};

/// Sawyer-style testing constants of the sparse operator attached to
/// `family`: beta1 tests sigma-indicators against w, beta2 the dual.
TestingConstants testing_constants(const SparseFamily& family, const Weight& sigma, const Weight& w,
                                   const ExponentConfig& cfg);

/// A positive operator in sigma-composed form together with the w-pairing
/// adjoint of its linearization at a point. apply: f -> T(sigma f);
/// adjoint(f_at, h): the field s with <dT[u], h>_w = <u, s>_sigma (for linear
/// T the first argument is ignored).
struct OperatorClosure {
    std::string name;
    std::function<GridFunction(const GridFunction&)> apply;
    std::function<GridFunction(const GridFunction&, const GridFunction&)> adjoint;
};

OperatorClosure make_sparse_closure(const SparseOperatorSpec& spec, const Weight& sigma,
                                    const Weight& w);
OperatorClosure make_dyadic_integral_closure(const DyadicTree& tree, double alpha,
                                             const Weight& sigma, const Weight& w);
OperatorClosure make_dyadic_maximal_closure(const DyadicTree& tree, double alpha,
                                            const Weight& sigma, const Weight& w);
OperatorClosure make_kernel_closure(const DyadicTree& tree, double alpha, const Weight& sigma,
                                    const Weight& w);

/// Candidate test functions for the norm search: the constant 1, indicators
/// of tree cubes (generated lazily), plus any extras the caller supplies.
struct CandidateSet {
    const DyadicTree* tree = nullptr;
    bool unit = true;
    bool indicators = true;
    std::vector<GridFunction> extra;
};

struct NormBracket {
    double lower = 0.0;
    std::string witness;
    double beta1 = std::numeric_limits<double>::quiet_NaN();
    double beta2 = std::numeric_limits<double>::quiet_NaN();
    double testing_upper = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> ascent_trace; // lower-bound value after each step
};

/// Best found ratio ||T(sigma f)||_Lq(w) / ||f||_Lp(sigma): max over the
/// candidates, then multiplicative ascent (exponent 1/2 on the normalized
/// sensitivity) from the best one; the reported lower bound is nondecreasing
/// across steps. When `testing_family` is given the bracket also carries the
/// testing constants and beta1^(1/q) + beta2^(1/p').
NormBracket strong_norm_lower(const OperatorClosure& T, const Weight& sigma, const Weight& w,
                              const ExponentConfig& cfg, const CandidateSet& candidates,
                              int ascent_steps, const SparseFamily* testing_family = nullptr);

/// Weak-type ratio: max over candidates of
/// sup_lambda lambda w({T(sigma f) > lambda})^(1/q) / ||f||_Lp(sigma), the
/// sup ranging over the attained (cellwise) values of the image.
double weak_norm(const OperatorClosure& T, const Weight& sigma, const Weight& w,
                 const ExponentConfig& cfg, const CandidateSet& candidates);

struct PhiDecayReport {
    std::vector<int> lambda;                // 1..12
    std::vector<double> lebesgue_fraction;  // |{Phi_S > lambda unit}| / |S|
    std::vector<double> weighted_fraction;  // w(...) / w(S)
    double threshold_unit = 0.0;            // side(S)^alpha <sigma>_S
    double decay_base = 0.0;                // fitted base over lambda in [2,8]
};

/// Distributional diagnostic for the stacked sparse sum below one member S:
/// Phi_S = sum over family cubes whose stopping parent (fractional
/// sigma-average stopping inside the family) is S. Throws when S is not a
/// member.
PhiDecayReport phi_distribution_check(const SparseFamily& family, const Weight& sigma,
                                      const Weight& w, const ExponentConfig& cfg, const CubeRef& S);

std::string norm_bracket_to_json(const NormBracket& bracket);
std::string phi_report_to_json(const PhiDecayReport& report);

} // namespace bumplab
