#include "bumplab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <json.hpp>

#include "bumplab/util.hpp"

namespace bumplab {

namespace {

GridFunction cellwise_product(const GridFunction& a, const GridFunction& b) {
    std::vector<double> cells(static_cast<std::size_t>(a.cell_count()));
    for (std::int64_t c = 0; c < a.cell_count(); ++c)
        cells[static_cast<std::size_t>(c)] = a.cell_value(c) * b.cell_value(c);
    return GridFunction(a.tree(), std::move(cells));
}

// subtree-accumulated coefficients: out[id] = sum of a over cubes inside id
std::vector<double> subtree_sums(const DyadicTree& tree, const std::vector<double>& a) {
    std::vector<double> acc = a;
    for (int k = tree.depth() - 1; k >= 0; --k) {
        const std::int64_t side_cubes = std::int64_t{1} << k;
        const std::int64_t count = tree.cubes_at(k);
        for (std::int64_t idx = 0; idx < count; ++idx) {
            const std::int64_t x = tree.dimension() == 1 ? idx : idx % side_cubes;
            const std::int64_t y = tree.dimension() == 1 ? 0 : idx / side_cubes;
            const CubeRef q{k, {x, y}};
            double s = acc[static_cast<std::size_t>(tree.index_of(q))];
            for (int j = 0; j < tree.children_per_cube(); ++j)
                s += acc[static_cast<std::size_t>(tree.index_of(tree.child(q, j)))];
            acc[static_cast<std::size_t>(tree.index_of(q))] = s;
        }
    }
    return acc;
}

} // namespace

double carleson_constant(const CarlesonSequence& seq) {
    const DyadicTree& tree = *seq.tree;
    if (static_cast<std::int64_t>(seq.a.size()) != tree.cube_count())
        throw parameter_error("coefficient array must cover every cube");
    for (double v : seq.a)
        if (!(v >= 0.0)) throw parameter_error("Carleson coefficients must be nonnegative");
    const std::vector<double> acc = subtree_sums(tree, seq.a);
    const double e = seq.q / seq.p;
    double best = 0.0;
    for (std::int64_t id = 0; id < tree.cube_count(); ++id) {
        const double inner = acc[static_cast<std::size_t>(id)];
        if (inner == 0.0) continue;
        const double m = seq.mu->mass(tree.cube_at(id));
        if (m == 0.0) return std::numeric_limits<double>::infinity();
        best = std::max(best, inner / std::pow(m, e));
    }
    return best;
}

EmbeddingReport embedding_report(const CarlesonSequence& seq, const GridFunction& f) {
    const DyadicTree& tree = *seq.tree;
    if (!(seq.p > 1.0 && seq.p <= seq.q && std::isfinite(seq.q)))
        throw parameter_error("embedding needs 1 < p <= q < inf");
    const Weight& mu = *seq.mu;
    const double fnorm = lp_norm(f, mu, seq.p);
    if (fnorm == 0.0) throw degenerate_input_error("f is trivial in L^p(mu)");

    const GridFunction fmu = cellwise_product(f, mu.fn());
    EmbeddingReport report;

    // averages <f>^mu_Q and the nu-mass they carry
    struct Node {
        double avg;
        double a;
    };
    std::vector<Node> nodes;
    std::vector<double> terms;
    nodes.reserve(seq.a.size());
    for (std::int64_t id = 0; id < tree.cube_count(); ++id) {
        const double aq = seq.a[static_cast<std::size_t>(id)];
        if (aq == 0.0) continue;
        const CubeRef q = tree.cube_at(id);
        const double mq = mu.mass(q);
        if (mq == 0.0) {
            ++report.skipped_zero_mass;
            continue;
        }
        const double avg = fmu.mass(q) / mq;
        nodes.push_back({avg, aq});
        terms.push_back(aq * std::pow(avg, seq.q));
    }
    report.ratio = pairwise_sum(terms) / std::pow(fnorm, seq.q);

    // dyadic maximal of f against mu, cellwise
    std::vector<double> prev{mu.mass(tree.root()) > 0.0 ? fmu.mass(tree.root()) / mu.mass(tree.root())
                                                        : 0.0};
    for (int k = 1; k <= tree.depth(); ++k) {
        const std::int64_t side_cubes = std::int64_t{1} << k;
        const std::int64_t count = tree.cubes_at(k);
        std::vector<double> cur(static_cast<std::size_t>(count));
        for (std::int64_t idx = 0; idx < count; ++idx) {
            const std::int64_t x = tree.dimension() == 1 ? idx : idx % side_cubes;
            const std::int64_t y = tree.dimension() == 1 ? 0 : idx / side_cubes;
            const CubeRef q{k, {x, y}};
            const double mq = mu.mass(q);
            const double own = mq > 0.0 ? fmu.mass(q) / mq : 0.0;
            const std::int64_t parent_idx =
                tree.dimension() == 1 ? (x >> 1) : ((y >> 1) * (side_cubes >> 1) + (x >> 1));
            cur[static_cast<std::size_t>(idx)] = std::max(prev[static_cast<std::size_t>(parent_idx)], own);
        }
        prev = std::move(cur);
    }
    // mu-mass distribution of the maximal function
    const double cell_vol = tree.volume(tree.depth());
    std::vector<std::pair<double, double>> mf(prev.size());
    for (std::size_t c = 0; c < prev.size(); ++c)
        mf[c] = {prev[c], mu.fn().cell_value(static_cast<std::int64_t>(c)) * cell_vol};
    std::sort(mf.begin(), mf.end(), [](auto& a, auto& b) { return a.first > b.first; });
    std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.avg > b.avg; });

    // every attained value of Tf = <f>^mu against the exact level sets
    std::vector<double> lambdas;
    for (const Node& nd : nodes)
        if (lambdas.empty() || lambdas.back() != nd.avg) lambdas.push_back(nd.avg);
    const double eqp = seq.q / seq.p;
    for (const double lam : lambdas) {
        if (!(lam > 0.0)) continue;
        double nu_above = 0.0;
        for (const Node& nd : nodes) {
            if (!(nd.avg > lam)) break;
            nu_above += nd.a;
        }
        double mu_above = 0.0;
        for (const auto& [val, mass] : mf) {
            if (!(val > lam)) break;
            mu_above += mass;
        }
        const double lhs = std::pow(lam, seq.q) * nu_above;
        const double rhs = std::pow(std::pow(lam, seq.p) * mu_above, eqp);
        ++report.levels_checked;
        if (lhs == 0.0) continue;
        const double r = rhs > 0.0 ? lhs / rhs : std::numeric_limits<double>::infinity();
        report.level_set_max_ratio = std::max(report.level_set_max_ratio, r);
    }
    return report;
}

TestingConstants testing_constants(const SparseFamily& family, const Weight& sigma, const Weight& w,
                                   const ExponentConfig& cfg) {
    cfg.validate();
    if (!(cfg.p > 1.0)) throw parameter_error("testing constants need p > 1");
    const DyadicTree& tree = family.tree();
    const std::int64_t per_side = tree.cells_per_side();
    const double cell_vol = tree.volume(tree.depth());
    TestingConstants out;

    const auto run = [&](const Weight& inner, const Weight& outer, double power,
                         double mass_exp) -> double {
        // sup over members P of
        //   outer-integral of (stacked inner sum below P)^power / inner(P)^mass_exp
        double best = 0.0;
        std::vector<double> stack_field;
        for (std::size_t pi = 0; pi < family.size(); ++pi) {
            const CubeRef p = family.member(pi);
            const double pmass = inner.mass(p);
            if (pmass == 0.0) {
                ++out.skipped;
                continue;
            }
            const LatticeBox pb = tree.cells_of(p);
            const std::int64_t w0 = pb.lo[0], w1 = pb.hi[0];
            const std::int64_t v0 = pb.lo[1], v1 = pb.hi[1];
            const std::int64_t nx = w1 - w0;
            const std::int64_t ny = tree.dimension() == 1 ? 1 : v1 - v0;
            stack_field.assign(static_cast<std::size_t>(nx * ny), 0.0);
            // members inside P via the family tree
            std::vector<std::size_t> sub{pi};
            for (std::size_t s = 0; s < sub.size(); ++s)
                for (int ci : family.child_indices(sub[s])) sub.push_back(static_cast<std::size_t>(ci));
            for (std::size_t mi : sub) {
                const CubeRef q = family.member(mi);
                const double term = std::pow(tree.side(q.level), cfg.alpha) * inner.average(q);
                const LatticeBox qb = tree.cells_of(q);
                for (std::int64_t y = std::max(qb.lo[1], v0); y < std::min(qb.hi[1], v1); ++y)
                    for (std::int64_t x = qb.lo[0]; x < qb.hi[0]; ++x)
                        stack_field[static_cast<std::size_t>((y - v0) * nx + (x - w0))] += term;
            }
            std::vector<double> terms(stack_field.size());
            for (std::int64_t y = v0; y < v1; ++y)
                for (std::int64_t x = w0; x < w1; ++x) {
                    const std::int64_t cell = tree.dimension() == 1 ? x : y * per_side + x;
                    const std::size_t li = static_cast<std::size_t>((y - v0) * nx + (x - w0));
                    terms[li] = std::pow(stack_field[li], power) * outer.fn().cell_value(cell) * cell_vol;
                }
            best = std::max(best, pairwise_sum(terms) / std::pow(pmass, mass_exp));
        }
        return best;
    };

    out.beta1 = run(sigma, w, cfg.q, cfg.q / cfg.p);
    out.beta2 = run(w, sigma, cfg.p_conj(), cfg.p_conj() / cfg.q_conj());
    return out;
}

OperatorClosure make_sparse_closure(const SparseOperatorSpec& spec, const Weight& sigma,
                                    const Weight& w) {
    OperatorClosure closure;
    closure.name = "sparse";
    closure.apply = [spec, &sigma](const GridFunction& f) {
        return sparse_apply(spec, cellwise_product(f, sigma.fn()));
    };
    closure.adjoint = [spec, &w](const GridFunction&, const GridFunction& h) {
        return sparse_apply(spec, cellwise_product(h, w.fn()));
    };
    return closure;
}

OperatorClosure make_dyadic_integral_closure(const DyadicTree& tree, double alpha,
                                             const Weight& sigma, const Weight& w) {
    OperatorClosure closure;
    closure.name = "dyadic_integral";
    closure.apply = [&tree, alpha, &sigma](const GridFunction& f) {
        return dyadic_frac_integral(cellwise_product(f, sigma.fn()), tree, alpha);
    };
    closure.adjoint = [&tree, alpha, &w](const GridFunction&, const GridFunction& h) {
        return dyadic_frac_integral(cellwise_product(h, w.fn()), tree, alpha);
    };
    return closure;
}

OperatorClosure make_kernel_closure(const DyadicTree& tree, double alpha, const Weight& sigma,
                                    const Weight& w) {
    OperatorClosure closure;
    closure.name = "kernel_integral";
    closure.apply = [alpha, &sigma](const GridFunction& f) {
        return kernel_frac_integral(cellwise_product(f, sigma.fn()), alpha);
    };
    closure.adjoint = [alpha, &w](const GridFunction&, const GridFunction& h) {
        return kernel_frac_integral(cellwise_product(h, w.fn()), alpha);
    };
    (void)tree;
    return closure;
}

OperatorClosure make_dyadic_maximal_closure(const DyadicTree& tree, double alpha,
                                            const Weight& sigma, const Weight& w) {
    OperatorClosure closure;
    closure.name = "dyadic_maximal";
    closure.apply = [&tree, alpha, &sigma](const GridFunction& f) {
        return dyadic_frac_maximal(cellwise_product(f, sigma.fn()), tree, alpha);
    };
    // adjoint of the argmax linearization: route each cell's weight to the
    // cube attaining its chain max, then spread back along chains
    closure.adjoint = [&tree, alpha, &sigma, &w](const GridFunction& f_at, const GridFunction& h) {
        const GridFunction sf = cellwise_product(f_at, sigma.fn());
        const int L = tree.depth();
        std::vector<double> pow_side(static_cast<std::size_t>(L) + 1);
        for (int k = 0; k <= L; ++k) pow_side[static_cast<std::size_t>(k)] = std::pow(tree.side(k), alpha);
        std::vector<double> bucket(static_cast<std::size_t>(tree.cube_count()), 0.0);
        const double cell_vol = tree.volume(L);
        const std::int64_t n = tree.cells_per_side();
        const std::int64_t cells = tree.cell_count();
        for (std::int64_t c = 0; c < cells; ++c) {
            const std::int64_t cx = tree.dimension() == 1 ? c : c % n;
            const std::int64_t cy = tree.dimension() == 1 ? 0 : c / n;
            int best_level = 0;
            double best = -1.0;
            for (int k = 0; k <= L; ++k) {
                const CubeRef q{k, {cx >> (L - k), cy >> (L - k)}};
                const double val = pow_side[static_cast<std::size_t>(k)] * sf.average(q);
                if (val > best) {
                    best = val;
                    best_level = k;
                }
            }
            const CubeRef qb{best_level, {cx >> (L - best_level), cy >> (L - best_level)}};
            bucket[static_cast<std::size_t>(tree.index_of(qb))] +=
                h.cell_value(c) * w.fn().cell_value(c) * cell_vol;
        }
        // s(y) = sum over chain cubes of bucket * side^alpha / |Q|
        std::vector<double> prev{bucket[0] * pow_side[0] / tree.volume(0)};
        for (int k = 1; k <= L; ++k) {
            const std::int64_t side_cubes = std::int64_t{1} << k;
            const std::int64_t count = tree.cubes_at(k);
            std::vector<double> cur(static_cast<std::size_t>(count));
            for (std::int64_t idx = 0; idx < count; ++idx) {
                const std::int64_t x = tree.dimension() == 1 ? idx : idx % side_cubes;
                const std::int64_t y = tree.dimension() == 1 ? 0 : idx / side_cubes;
                const std::int64_t parent_idx =
                    tree.dimension() == 1 ? (x >> 1) : ((y >> 1) * (side_cubes >> 1) + (x >> 1));
                cur[static_cast<std::size_t>(idx)] =
                    prev[static_cast<std::size_t>(parent_idx)] +
                    bucket[static_cast<std::size_t>(tree.index_of(CubeRef{k, {x, y}}))] *
                        pow_side[static_cast<std::size_t>(k)] / tree.volume(k);
            }
            prev = std::move(cur);
        }
        return GridFunction(tree, std::move(prev));
    };
    return closure;
}

namespace {

// iterate the candidate set: fn(f, description)
void for_each_candidate(const CandidateSet& set,
                        const std::function<void(const GridFunction&, const std::string&)>& fn) {
    const DyadicTree& tree = *set.tree;
    if (set.unit) {
        fn(constant_weight(tree, 1.0).fn(), "unit");
    }
    if (set.indicators) {
        for (std::int64_t id = 0; id < tree.cube_count(); ++id) {
            const CubeRef q = tree.cube_at(id);
            std::vector<double> cells(static_cast<std::size_t>(tree.cell_count()), 0.0);
            const LatticeBox b = tree.cells_of(q);
            const std::int64_t n = tree.cells_per_side();
            for (std::int64_t y = b.lo[1]; y < b.hi[1]; ++y)
                for (std::int64_t x = b.lo[0]; x < b.hi[0]; ++x)
                    cells[static_cast<std::size_t>(tree.dimension() == 1 ? x : y * n + x)] = 1.0;
            fn(GridFunction(tree, std::move(cells)),
               "indicator(level=" + std::to_string(q.level) + ",x=" + std::to_string(q.coords[0]) +
                   (tree.dimension() == 2 ? ",y=" + std::to_string(q.coords[1]) : "") + ")");
        }
    }
    for (std::size_t i = 0; i < set.extra.size(); ++i) fn(set.extra[i], "extra#" + std::to_string(i));
}

} // namespace

NormBracket strong_norm_lower(const OperatorClosure& T, const Weight& sigma, const Weight& w,
                              const ExponentConfig& cfg, const CandidateSet& candidates,
                              int ascent_steps, const SparseFamily* testing_family) {
    cfg.validate();
    NormBracket bracket;
    std::optional<GridFunction> best_f;
    std::size_t usable = 0;
    for_each_candidate(candidates, [&](const GridFunction& f, const std::string& desc) {
        const double denom = lp_norm(f, sigma, cfg.p);
        if (denom == 0.0) return; // sigma-trivial candidate
        ++usable;
        const double ratio = lp_norm(T.apply(f), w, cfg.q) / denom;
        if (ratio > bracket.lower) {
            bracket.lower = ratio;
            bracket.witness = desc;
            best_f = f;
        }
    });
    if (usable == 0) throw degenerate_input_error("every candidate is trivial in L^p(sigma)");
    bracket.ascent_trace.push_back(bracket.lower);

    if (best_f.has_value() && ascent_steps > 0) {
        const DyadicTree& tree = best_f->tree();
        GridFunction f = *best_f;
        double prev_ratio = bracket.lower;
        for (int step = 0; step < ascent_steps; ++step) {
            const GridFunction u = T.apply(f);
            // sensitivity of ||T(sigma f)||_q^q routed back through the adjoint
            std::vector<double> hq(static_cast<std::size_t>(u.cell_count()));
            for (std::int64_t c = 0; c < u.cell_count(); ++c)
                hq[static_cast<std::size_t>(c)] = std::pow(u.cell_value(c), cfg.q - 1.0);
            const GridFunction s = T.adjoint(f, GridFunction(tree, std::move(hq)));
            double smax = 0.0;
            for (std::int64_t c = 0; c < s.cell_count(); ++c) {
                if (f.cell_value(c) > 0.0)
                    smax = std::max(smax, s.cell_value(c) / std::pow(f.cell_value(c), cfg.p - 1.0));
            }
            if (smax == 0.0) break;
            std::vector<double> next(static_cast<std::size_t>(f.cell_count()), 0.0);
            for (std::int64_t c = 0; c < f.cell_count(); ++c) {
                const double fv = f.cell_value(c);
                if (fv <= 0.0) continue;
                const double r = (s.cell_value(c) / std::pow(fv, cfg.p - 1.0)) / smax;
                next[static_cast<std::size_t>(c)] = fv * std::sqrt(r);
            }
            GridFunction candidate(tree, std::move(next));
            const double denom = lp_norm(candidate, sigma, cfg.p);
            if (denom == 0.0) break;
            const double ratio = lp_norm(T.apply(candidate), w, cfg.q) / denom;
            if (ratio > bracket.lower) {
                bracket.lower = ratio;
                bracket.witness += "+ascent";
            }
            bracket.ascent_trace.push_back(bracket.lower);
            f = std::move(candidate);
            if (std::abs(ratio - prev_ratio) < 1e-4 * std::max(1.0, bracket.lower)) break;
            prev_ratio = ratio;
        }
    }

    if (testing_family != nullptr) {
        const TestingConstants tc = testing_constants(*testing_family, sigma, w, cfg);
        bracket.beta1 = tc.beta1;
        bracket.beta2 = tc.beta2;
        bracket.testing_upper =
            std::pow(tc.beta1, 1.0 / cfg.q) + std::pow(tc.beta2, 1.0 / cfg.p_conj());
    }
    return bracket;
}

double weak_norm(const OperatorClosure& T, const Weight& sigma, const Weight& w,
                 const ExponentConfig& cfg, const CandidateSet& candidates) {
    cfg.validate();
    const DyadicTree& tree = *candidates.tree;
    const double cell_vol = tree.volume(tree.depth());
    double best = 0.0;
    std::size_t usable = 0;
    for_each_candidate(candidates, [&](const GridFunction& f, const std::string&) {
        const double denom = lp_norm(f, sigma, cfg.p);
        if (denom == 0.0) return;
        ++usable;
        const GridFunction u = T.apply(f);
        std::vector<std::pair<double, double>> vals(static_cast<std::size_t>(u.cell_count()));
        for (std::int64_t c = 0; c < u.cell_count(); ++c)
            vals[static_cast<std::size_t>(c)] = {u.cell_value(c), w.fn().cell_value(c) * cell_vol};
        std::sort(vals.begin(), vals.end(), [](auto& a, auto& b) { return a.first > b.first; });
        double cum = 0.0;
        double candidate_best = 0.0;
        for (std::size_t i = 0; i < vals.size(); ++i) {
            cum += vals[i].second;
            const bool last_of_value = i + 1 == vals.size() || vals[i + 1].first != vals[i].first;
            if (last_of_value && vals[i].first > 0.0)
                candidate_best =
                    std::max(candidate_best, vals[i].first * std::pow(cum, 1.0 / cfg.q));
        }
        best = std::max(best, candidate_best / denom);
    });
    if (usable == 0) throw degenerate_input_error("every candidate is trivial in L^p(sigma)");
    return best;
}

PhiDecayReport phi_distribution_check(const SparseFamily& family, const Weight& sigma,
                                      const Weight& w, const ExponentConfig& cfg, const CubeRef& S) {
    const DyadicTree& tree = family.tree();
    int s_index = -1;
    for (std::size_t i = 0; i < family.size(); ++i)
        if (family.member(i) == S) s_index = static_cast<int>(i);
    if (s_index < 0) throw parameter_error("S is not a member of the family");

    // fractional sigma-average stopping inside the family (factor 4), as the
    // separated-bump argument sets it up; parent map over members
    std::vector<double> fval(family.size());
    for (std::size_t i = 0; i < family.size(); ++i) {
        const CubeRef q = family.member(i);
        fval[i] = std::pow(tree.side(q.level), cfg.alpha) * sigma.average(q);
    }
    std::vector<int> stop_parent(family.size(), -1);
    {
        std::vector<std::pair<std::size_t, int>> stack{{family.root_index(), -1}};
        while (!stack.empty()) {
            auto [i, anchor] = stack.back();
            stack.pop_back();
            int my_anchor;
            if (anchor < 0 || fval[i] > 4.0 * fval[static_cast<std::size_t>(anchor)])
                my_anchor = static_cast<int>(i); // member joins the stopping set
            else
                my_anchor = anchor;
            stop_parent[i] = my_anchor;
            for (int c : family.child_indices(i)) stack.push_back({static_cast<std::size_t>(c), my_anchor});
        }
    }

    // Phi_S over the cells of S
    const LatticeBox sb = tree.cells_of(family.member(static_cast<std::size_t>(s_index)));
    const std::int64_t nx = sb.hi[0] - sb.lo[0];
    const std::int64_t ny = tree.dimension() == 1 ? 1 : sb.hi[1] - sb.lo[1];
    const std::int64_t per_side = tree.cells_per_side();
    std::vector<double> phi(static_cast<std::size_t>(nx * ny), 0.0);
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (stop_parent[i] != s_index) continue;
        const CubeRef q = family.member(i);
        const double term = std::pow(tree.side(q.level), cfg.alpha) * sigma.average(q);
        const LatticeBox qb = tree.cells_of(q);
        for (std::int64_t y = std::max(qb.lo[1], sb.lo[1]); y < std::min(qb.hi[1], sb.hi[1]); ++y)
            for (std::int64_t x = std::max(qb.lo[0], sb.lo[0]); x < std::min(qb.hi[0], sb.hi[0]); ++x)
                phi[static_cast<std::size_t>((y - sb.lo[1]) * nx + (x - sb.lo[0]))] += term;
    }

    PhiDecayReport report;
    report.threshold_unit = fval[static_cast<std::size_t>(s_index)];
    const double s_vol = tree.volume(S.level);
    const double cell_vol = tree.volume(tree.depth());
    double s_wmass = 0.0;
    std::vector<double> wcells(phi.size(), 0.0);
    for (std::int64_t y = sb.lo[1]; y < (tree.dimension() == 1 ? 1 : sb.hi[1]); ++y)
        for (std::int64_t x = sb.lo[0]; x < sb.hi[0]; ++x) {
            const std::int64_t cell = tree.dimension() == 1 ? x : y * per_side + x;
            const double m = w.fn().cell_value(cell) * cell_vol;
            wcells[static_cast<std::size_t>((y - sb.lo[1]) * nx + (x - sb.lo[0]))] = m;
            s_wmass += m;
        }
    for (int lam = 1; lam <= 12; ++lam) {
        const double threshold = lam * report.threshold_unit;
        double leb = 0.0, wei = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            if (phi[i] > threshold) {
                leb += cell_vol;
                wei += wcells[i];
            }
        }
        report.lambda.push_back(lam);
        report.lebesgue_fraction.push_back(leb / s_vol);
        report.weighted_fraction.push_back(s_wmass > 0.0 ? wei / s_wmass : 0.0);
    }
    // least-squares fit of ln(fraction) over lambda in [2,8]
    {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < report.lambda.size(); ++i) {
            const int lam = report.lambda[i];
            if (lam >= 2 && lam <= 8 && report.lebesgue_fraction[i] > 0.0)
                pts.emplace_back(lam, std::log(report.lebesgue_fraction[i]));
        }
        if (pts.size() >= 2) {
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (auto& [x, y] : pts) {
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
            }
            const double m = static_cast<double>(pts.size());
            const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
            report.decay_base = std::exp(slope);
        }
    }
    return report;
}

std::string norm_bracket_to_json(const NormBracket& bracket) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["lower"] = bracket.lower;
    j["witness"] = bracket.witness;
    j["beta1"] = bracket.beta1;
    j["beta2"] = bracket.beta2;
    j["testing_upper"] = bracket.testing_upper;
    j["ascent_trace"] = bracket.ascent_trace;
    return j.dump();
}

std::string phi_report_to_json(const PhiDecayReport& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["threshold_unit"] = report.threshold_unit;
    j["lambda"] = report.lambda;
    j["lebesgue_fraction"] = report.lebesgue_fraction;
    j["weighted_fraction"] = report.weighted_fraction;
    j["decay_base"] = report.decay_base;
    return j.dump();
}

} // namespace bumplab
