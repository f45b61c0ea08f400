#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bumplab/operators.hpp"

namespace bumplab {

/// Log-power bump function family. The one-bump variant lives on (1, inf)
/// (values at t <= 1 clamp to t = 1, reachable only through rounding) and is
/// normalized so that the integral of dt / (t eps^r(t)) over (1, inf) is
/// exactly 1. The separated variant lives on (0, inf), falls on (0,1), rises
/// on (1, inf), and integrates dt / (t eps^(1/r)(t)) to exactly 2/delta.
class EpsilonSpec {
  public:
    enum class Variant { onebump, separated };

    static EpsilonSpec onebump(double slot, double delta) { return {Variant::onebump, slot, delta}; }
    static EpsilonSpec separated(double slot, double delta) { return {Variant::separated, slot, delta}; }

    Variant variant() const { return variant_; }
    /// The exponent slot r this function was built for (p, q, p' or q').
    double slot() const { return slot_; }
    double delta() const { return delta_; }

    double eval(double t) const;
    /// Closed-form value of the defining integral (1, resp. 2/delta).
    double normalization() const;
    /// One-bump running integral over (1, T]: 1 - (1 + ln T)^-delta.
    double onebump_partial(double T) const;

  private:
    EpsilonSpec(Variant v, double slot, double delta);

    Variant variant_;
    double slot_;
    double delta_;
};

/// Result of one bump-constant sweep: the supremum, where it was attained,
/// and how many cubes were skipped because a weight had zero mass there.
struct BumpReport {
    double constant = 0.0;
    CubeKey argmax{};
    std::size_t skipped = 0;
    std::vector<std::pair<CubeKey, double>> table; // per-cube values, on request
};

struct SweepOptions {
    bool include_shifted = true; // also sweep shifted-grid cubes inside the root
    bool with_table = false;
    unsigned threads = 1;
};

/// Entropy functional rho_sigma(Q) = (1/sigma(Q)) int_Q M(sigma 1_Q); nullopt
/// when sigma(Q) == 0 (callers skip such cubes). Always >= 1 up to rounding.
std::optional<double> rho(const Weight& sigma, const DyadicTree& grid, const CubeRef& q);
std::optional<double> rho_box(const Weight& sigma, const LatticeBox& box);

/// Fractional analogue int_Q M_alpha(sigma 1_Q)^(q/p) / sigma(Q)^(q/p).
std::optional<double> varrho(const Weight& sigma, const DyadicTree& grid, const CubeRef& q,
                             double alpha, double p, double q_exp);
std::optional<double> varrho_box(const Weight& sigma, const LatticeBox& box, double alpha, double p,
                                 double q_exp);

/// sup over cubes of sigma(Q)^(1/p') w(Q)^(1/q) |Q|^(alpha/n - 1). Suprema
/// here and below run over the root grid's cubes plus every shifted-family
/// cube contained in the root box.
BumpReport weak_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                         const SweepOptions& opts = {});

/// One-bump constant for the maximal operator: the weak quantity times
/// rho_sigma^(1/p) eps_q(rho_sigma). eps must be a one-bump function in slot q.
BumpReport onebump_max_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                                const EpsilonSpec& eps_q, const SweepOptions& opts = {});

/// One-bump constant for the fractional integral, with entropy factors on
/// both weights (slots p and q').
BumpReport onebump_int_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                                const EpsilonSpec& eps_p, const EpsilonSpec& eps_qc,
                                const SweepOptions& opts = {});

/// Separated bump constant: sup of (|Q|^(alpha/n) <sigma>_Q)^(q/p') <w>_Q
/// varrho eps_q(varrho); eps must be a separated function in slot q.
BumpReport sep_bump_constant(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                             const EpsilonSpec& eps_q, const SweepOptions& opts = {});

/// The dual separated constant, i.e. the sweep with (sigma, w) swapped and
/// exponents (q', p'); builds its own separated eps in slot p'.
BumpReport sep_bump_dual(const Weight& sigma, const Weight& w, const ExponentConfig& cfg,
                         double delta, const SweepOptions& opts = {});

std::string bump_report_to_json(const BumpReport& report);

} // namespace bumplab
