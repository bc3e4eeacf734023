#pragma once

#include <string>
#include <utility>
#include <vector>

#include "signsum/distribution/distribution.hpp"
#include "signsum/errors.hpp"
#include "signsum/gaussian.hpp"
#include "signsum/parallel.hpp"
#include "signsum/verifier/report.hpp"

namespace signsum {

/// The constant the whole construction is meant to beat.
inline const rational& main_constant_threshold() {
    static const rational value(427685, 1000000);
    return value;
}

inline constexpr const char* main_constant_text = "0.427685";

/// The pair (c1, c2) and weight 1/2^(K-1) appearing in the weighted-average inequality.
struct lemma_two_instance {
    int K = 2;
    rational c1;
    rational c2;
    rational weight;

    static lemma_two_instance make(int K) {
        if (K < 2) throw contract_error("lemma 2 instance needs K >= 2");
        const rational k(K);
        const rational d = (2 * k + 1) * (2 * k + 1);
        return {K, ((k + 1) * (k + 1) - k) / d, ((k + 1) * (k + 1) - (k + 2)) / d, rational::pow2(1 - K)};
    }

    // c1 = 1/4 + (3/4)/(2K+1)^2 and c2 = 1/4 - (5/4)/(2K+1)^2
    bool c1_identity() const {
        const rational d = rational((2 * K + 1) * (2 * K + 1));
        return c1 == rational(1, 4) + rational(3, 4) / d;
    }
    bool c2_identity() const {
        const rational d = rational((2 * K + 1) * (2 * K + 1));
        return c2 == rational(1, 4) - rational(5, 4) / d;
    }
};

/// Cell [lo, hi] of the convexity grid.
struct grid_cell {
    rational lo;
    rational hi;
};

namespace detail {

inline constexpr int max_precision_retries = 3;

// Runs fn(width) until it decides, halving the width on every retry.
// precision_exhausted turns into an undecided record.
template <class Fn>
evidence with_retries(std::string input, std::string relation, long double target, Fn fn) {
    evidence out;
    long double width = target;
    for (int attempt = 0; attempt <= max_precision_retries; ++attempt, width /= 2) {
        try {
            out = fn(width);
            out.note.clear();
        } catch (const precision_exhausted& e) {
            out = evidence{};
            out.outcome = verdict::undecided;
            out.note = e.what();
        }
        if (out.outcome != verdict::undecided) break;
    }
    out.input = std::move(input);
    out.relation = std::move(relation);
    return out;
}

inline real_interval f_at(const rational& c, long double width) { return gaussian::f_of_c<long double>(c, width); }

inline std::string weights_input(const weight_vector& v) { return "v=" + v.str(); }

}  // namespace detail

/// Pr[S >= x] <= Q(x) / (4 Q(sqrt 2)) on one instance with sum v_i^2 <= 1.
inline verification_report verify_bd_on_instance(const weight_vector& v, const real_value& x,
                                                 long double target = gaussian::default_target_width) {
    if (v.check_norm(rational(1)) != norm_status::certified)
        throw contract_error("bd instance: sum of squares must be certified <= 1");
    const probability_result p = prob_tail_ge(v, x);
    verification_report r{"bd-instance", verdict::verified, target, {}, {}};
    r.add(detail::with_retries(detail::weights_input(v) + " x=" + x.str(), "Pr[S>=x] <= bd(x)", target,
                               [&](long double w) {
                                   evidence e;
                                   e.lhs = p.bounds();
                                   e.rhs = gaussian::bd_bound(x.enclosure(), w);
                                   e.exact = p.exact;
                                   e.outcome = detail::compare_le(p.lower, p.upper, *e.rhs);
                                   return e;
                               }));
    return r;
}

/// Pr[|x + Y| <= 1] >= F(c) when |x| <= 1 and sum v_i^2 <= c (1 + |x|)^2.
inline verification_report verify_lemma1_on_instance(const weight_vector& v, const rational& c, const rational& x,
                                                     long double target = gaussian::default_target_width) {
    if (c.sign() <= 0) throw contract_error("lemma 1 instance: c must be positive");
    if (x.abs() > rational(1)) throw contract_error("lemma 1 instance: |x| must be at most 1");
    const rational shift = rational(1) + x.abs();
    if (v.check_norm(c * shift * shift) != norm_status::certified)
        throw contract_error("lemma 1 instance: sum of squares must be certified <= c(1+|x|)^2");
    const probability_result p = prob_abs_shifted_le(v, real_value(x), rational(1));
    verification_report r{"lemma1-instance", verdict::verified, target, {}, {}};
    r.add(detail::with_retries(detail::weights_input(v) + " c=" + c.str() + " x=" + x.str(),
                               "Pr[|x+Y|<=1] >= F(c)", target, [&](long double w) {
                                   evidence e;
                                   e.lhs = p.bounds();
                                   e.rhs = detail::f_at(c, w);
                                   e.exact = p.exact;
                                   e.outcome = detail::compare_ge(p.lower, p.upper, *e.rhs);
                                   return e;
                               }));
    return r;
}

/// 2^(1-K) F(c1) + (1 - 2^(1-K)) F(c2) >= F(1/4) for K = 2..k_max, together
/// with the exact identities for c1 and c2.
inline verification_report verify_lemma2_finite(int k_max, long double target = gaussian::default_target_width) {
    if (k_max < 2) throw contract_error("lemma 2: k_max must be at least 2");
    verification_report r{"lemma2-finite", verdict::verified, target, {}, {}};
    const std::size_t count = static_cast<std::size_t>(k_max - 1);
    auto rows = parallel_map(count, [&](std::size_t i) {
        const lemma_two_instance inst = lemma_two_instance::make(static_cast<int>(i) + 2);
        const std::string input = "K=" + std::to_string(inst.K);
        std::vector<evidence> out;
        evidence id1{input, "c1 == 1/4 + (3/4)/(2K+1)^2", {}, {}, inst.c1, verdict::verified, "c1=" + inst.c1.str()};
        if (!inst.c1_identity()) id1.outcome = verdict::refuted;
        evidence id2{input, "c2 == 1/4 - (5/4)/(2K+1)^2", {}, {}, inst.c2, verdict::verified, "c2=" + inst.c2.str()};
        if (!inst.c2_identity()) id2.outcome = verdict::refuted;
        out.push_back(std::move(id1));
        out.push_back(std::move(id2));
        out.push_back(detail::with_retries(input, "w F(c1) + (1-w) F(c2) >= F(1/4)", target, [&](long double w) {
            const real_interval weight = enclose(inst.weight);
            const real_interval rest = enclose(rational(1) - inst.weight);
            evidence e;
            e.lhs = weight * detail::f_at(inst.c1, w / 2) + rest * detail::f_at(inst.c2, w / 2);
            e.rhs = detail::f_at(rational(1, 4), w);
            e.outcome = detail::compare_ge(*e.lhs, *e.rhs);
            return e;
        }));
        return out;
    });
    for (auto& row : rows)
        for (auto& e : row) r.add(std::move(e));
    return r;
}

/// F(1/4 + 3/4 xi)/2 + F(1/4 - 5/4 xi)/2 >= F(1/4).
inline verification_report verify_xi_inequality(const rational& xi,
                                                long double target = gaussian::default_target_width) {
    if (xi.sign() < 0) throw contract_error("xi must be non-negative");
    const rational a = rational(1, 4) + rational(3, 4) * xi;
    const rational b = rational(1, 4) - rational(5, 4) * xi;
    if (b.sign() <= 0) throw contract_error("xi must satisfy 1/4 - 5/4 xi > 0");
    verification_report r{"xi-inequality", verdict::verified, target, {}, {}};
    const std::string input = "xi=" + xi.str();
    const std::string relation = "F(1/4+3xi/4)/2 + F(1/4-5xi/4)/2 >= F(1/4)";
    if (xi.is_zero()) {
        // both sides are the same expression
        evidence e{input, "identical", {}, {}, {}, verdict::verified, "both sides reduce to F(1/4)"};
        r.add(std::move(e));
        return r;
    }
    r.add(detail::with_retries(input, relation, target, [&](long double w) {
        const real_interval half(0.5L);
        evidence e;
        e.lhs = half * detail::f_at(a, w / 2) + half * detail::f_at(b, w / 2);
        e.rhs = detail::f_at(rational(1, 4), w);
        e.outcome = detail::compare_ge(*e.lhs, *e.rhs);
        return e;
    }));
    return r;
}

/// `cells` contiguous cells with rational endpoints covering [eps, 1/3].
inline std::vector<grid_cell> default_convexity_grid(const rational& eps = rational(1, 10000), int cells = 1000) {
    if (cells < 1 || eps.sign() <= 0 || eps >= rational(1, 3)) throw contract_error("bad convexity grid");
    std::vector<grid_cell> out;
    const rational step = (rational(1, 3) - eps) / rational(cells);
    for (int k = 0; k < cells; ++k) {
        const rational lo = eps + step * rational(k);
        const rational hi = k + 1 == cells ? rational(1, 3) : eps + step * rational(k + 1);
        out.push_back({lo, hi});
    }
    return out;
}

/// Enclosure of -1/4 Q'(x^(-1/2)) x^(-7/2) (1 - 3x) over a cell, i.e. the
/// second derivative of Q(x^(-1/2)) in x.
inline real_interval convexity_expression(const grid_cell& cell) {
    const real_interval x(enclose(cell.lo).lo(), enclose(cell.hi).hi());
    const real_interval t = real_interval(1.0L) / sqrt(x);
    const real_interval phi = gaussian::normal_density(t);  // -Q'(t)
    const real_interval t2 = square(t);
    const real_interval t7 = t2 * t2 * t2 * t;
    const real_interval factor(enclose(rational(1) - rational(3) * cell.hi).lo(),
                               enclose(rational(1) - rational(3) * cell.lo).hi());
    return real_interval(0.25L) * phi * t7 * factor;
}

/// Positivity of the second derivative on every cell; the cell ending at 1/3
/// only needs a non-negative enclosure.
inline verification_report verify_convexity_q_invsqrt(const std::vector<grid_cell>& grid) {
    for (const auto& c : grid)
        if (c.lo.sign() <= 0 || c.hi > rational(1, 3) || c.hi < c.lo)
            throw contract_error("convexity grid cells must lie in (0, 1/3]");
    verification_report r{"convexity", verdict::verified, 0, {}, {}};
    auto rows = parallel_map(grid.size(), [&](std::size_t i) {
        const grid_cell& c = grid[i];
        const bool boundary = c.hi == rational(1, 3);
        evidence e;
        e.input = "x in [" + c.lo.str() + ", " + c.hi.str() + "]";
        e.relation = boundary ? "d2/dx2 Q(x^-1/2) >= 0" : "d2/dx2 Q(x^-1/2) > 0";
        e.lhs = convexity_expression(c);
        e.rhs = real_interval(0.0L);
        e.outcome = boundary ? detail::compare_ge(*e.lhs, *e.rhs) : detail::compare_gt(*e.lhs, *e.rhs);
        return e;
    });
    for (auto& e : rows) r.add(std::move(e));
    return r;
}

/// F bounded by 1/2 and decreasing along the grid; `delegated` reports (the
/// lemma checks) are attached and folded into the verdict.
inline verification_report verify_f_properties(const std::vector<rational>& grid,
                                               std::vector<verification_report> delegated = {},
                                               long double target = gaussian::default_target_width) {
    if (grid.empty()) throw contract_error("f properties: empty grid");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i].sign() <= 0) throw contract_error("f properties: grid values must be positive");
        if (i && !(grid[i - 1] < grid[i])) throw contract_error("f properties: grid must be strictly increasing");
    }
    verification_report r{"f-properties", verdict::verified, target, {}, {}};
    verification_report bounded{"f-bounded-by-half", verdict::verified, target, {}, {}};
    for (const auto& c : grid) {
        bounded.add(detail::with_retries("c=" + c.str(), "F(c) <= 1/2", target, [&](long double w) {
            evidence e;
            e.lhs = detail::f_at(c, w);
            e.rhs = real_interval(0.5L);
            e.outcome = detail::compare_ge(*e.rhs, *e.lhs);
            return e;
        }));
    }
    r.add(std::move(bounded));
    verification_report decreasing{"f-decreasing", verdict::verified, target, {}, {}};
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const rational& a = grid[i - 1];
        const rational& b = grid[i];
        decreasing.add(
            detail::with_retries("c=" + a.str() + ", c'=" + b.str(), "F(c) > F(c')", target, [&](long double w) {
                evidence e;
                e.lhs = detail::f_at(a, w);
                e.rhs = detail::f_at(b, w);
                e.outcome = detail::compare_gt(*e.lhs, *e.rhs);
                return e;
            }));
    }
    r.add(std::move(decreasing));
    for (auto& d : delegated) r.add(std::move(d));
    return r;
}

/// Midpoint concavity of F on consecutive triples of a grid:
/// F(m).lo >= (F(a).hi + F(b).hi)/2 - slack.
inline verification_report verify_f_concavity(const std::vector<rational>& grid, long double slack = 1e-12L,
                                              long double target = gaussian::default_target_width) {
    verification_report r{"f-concavity", verdict::verified, target, {}, {}};
    for (std::size_t i = 2; i < grid.size(); ++i) {
        const rational& a = grid[i - 2];
        const rational& m = grid[i - 1];
        const rational& b = grid[i];
        if (!(m - a == b - m) || a.sign() <= 0) throw contract_error("concavity grid must be positive and evenly spaced");
        r.add(detail::with_retries("a=" + a.str() + " m=" + m.str() + " b=" + b.str(),
                                   "F(m) >= (F(a)+F(b))/2 - slack", target, [&](long double w) {
                                       evidence e;
                                       e.lhs = detail::f_at(m, w);
                                       const real_interval chord =
                                           real_interval(0.5L) * (detail::f_at(a, w) + detail::f_at(b, w));
                                       e.rhs = chord - real_interval(slack);
                                       e.outcome = detail::compare_ge(*e.lhs, *e.rhs);
                                       return e;
                                   }));
    }
    return r;
}

/// Pr[|S| <= 1] > 0.427685 for one vector with sum v_i^2 <= 1.
inline verification_report verify_main_conclusion(const weight_vector& v) {
    if (v.check_norm(rational(1)) != norm_status::certified)
        throw contract_error("main conclusion: sum of squares must be certified <= 1");
    const probability_result p = prob_abs_shifted_le(v, real_value(0), rational(1));
    const rational& thr = main_constant_threshold();
    evidence e;
    e.input = detail::weights_input(v);
    e.relation = std::string("Pr[|S|<=1] > ") + main_constant_text;
    e.lhs = p.bounds();
    e.rhs = enclose(thr);
    e.exact = p.exact;
    e.outcome = p.lower > thr ? verdict::verified : (p.upper <= thr ? verdict::refuted : verdict::undecided);
    verification_report r{"main-instance", verdict::verified, 0, {}, {}};
    r.add(std::move(e));
    return r;
}

/// F(1/4) > 0.427685.
inline verification_report verify_main_constant(long double target = gaussian::default_target_width) {
    const rational& thr = main_constant_threshold();
    verification_report r{"main-constant", verdict::verified, target, {}, {}};
    r.add(detail::with_retries("c=1/4", std::string("F(1/4) > ") + main_constant_text, target, [&](long double w) {
        evidence e;
        e.lhs = detail::f_at(rational(1, 4), w);
        e.rhs = enclose(thr);
        e.outcome = to_rational(e.lhs->lo()) > thr ? verdict::verified
                    : to_rational(e.lhs->hi()) <= thr ? verdict::refuted
                                                      : verdict::undecided;
        return e;
    }));
    return r;
}

}  // namespace signsum
