#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "signsum/distribution/distribution.hpp"
#include "signsum/parallel.hpp"
#include "signsum/verifier/stress.hpp"
#include "signsum/verifier/verifier.hpp"

// Local search for weight vectors with small Pr[|S| <= 1]. The loop works in
// doubles; whatever it ends up with is rationalized, scaled into the unit
// ball and recounted exactly. Only the exact count is reported.
namespace signsum {

struct search_config {
    std::size_t n = 4;
    std::size_t restarts = 8;
    std::uint64_t seed = 1;
    double initial_step = 0.25;
    double decay = 0.5;
    double min_step = 1e-4;
    int sweeps_per_step = 4;
    std::int64_t denominator_bound = 64;
};

struct trajectory_point {
    std::uint64_t iteration;
    double probability;  // floating estimate inside the loop
};

struct restart_result {
    weight_vector vector;
    rational probability;
    std::vector<trajectory_point> trajectory;
};

struct search_result {
    weight_vector best;
    rational probability;
    std::size_t best_restart = 0;
    std::vector<trajectory_point> trajectory;  // of the best restart
    std::vector<rational> restart_probabilities;
    verdict lower_bound_check = verdict::verified;  // every candidate > 0.427685
};

namespace detail {

inline void validate(const search_config& c) {
    if (c.n < 1) throw contract_error("search: n must be at least 1");
    if (c.n > max_counting_weights)
        throw capacity_error("search: at most " + std::to_string(max_counting_weights) + " weights");
    if (c.restarts < 1) throw contract_error("search: restarts must be at least 1");
    if (!(c.decay > 0 && c.decay < 1)) throw contract_error("search: decay must lie in (0, 1)");
    if (!(c.initial_step > 0) || !(c.min_step > 0)) throw contract_error("search: steps must be positive");
    if (c.sweeps_per_step < 1) throw contract_error("search: sweeps_per_step must be positive");
    if (c.denominator_bound < 1) throw contract_error("search: denominator bound must be at least 1");
}

inline std::vector<double> all_sums(const double* w, std::size_t n) {
    std::vector<double> s{0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = s.size();
        s.resize(2 * m);
        for (std::size_t j = 0; j < m; ++j) {
            s[m + j] = s[j] + w[i];
            s[j] -= w[i];
        }
    }
    std::sort(s.begin(), s.end());
    return s;
}

// Fraction of sign patterns with |S| <= 1 + 1e-9, in doubles.
inline double float_objective(const std::vector<double>& v) {
    const std::size_t half = v.size() / 2;
    const std::vector<double> left = all_sums(v.data(), half);
    const std::vector<double> right = all_sums(v.data() + half, v.size() - half);
    const double t = 1.0 + 1e-9;
    std::uint64_t count = 0;
    std::size_t lo = right.size(), hi = right.size();
    // as l increases the window [-t - l, t - l] moves left
    for (double l : left) {
        while (lo > 0 && right[lo - 1] >= -t - l) --lo;
        while (hi > 0 && right[hi - 1] > t - l) --hi;
        if (hi > lo) count += hi - lo;
    }
    return std::ldexp(static_cast<double>(count), -static_cast<int>(v.size()));
}

inline void normalize(std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    s = std::sqrt(s);
    for (double& x : v) x = std::fabs(x) / s;
}

inline double standard_normal(stress::engine& g) {
    double u = 0;
    while (u == 0) u = stress::uniform_unit(g);
    const double r = std::sqrt(-2.0 * std::log(u));
    return r * std::cos(2.0 * std::numbers::pi * stress::uniform_unit(g));
}

}  // namespace detail

/// Closest p/q to x with 1 <= q <= max_den (continued fractions with the
/// final semiconvergent). x >= 0.
inline rational best_rational(double x, std::int64_t max_den) {
    if (!(x >= 0) || !std::isfinite(x)) throw contract_error("best_rational: x must be finite and non-negative");
    std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double a_f = std::floor(r);
        if (a_f > 1e15) break;
        const auto a = static_cast<std::int64_t>(a_f);
        const std::int64_t k2 = a * k1 + k0;
        if (k2 > max_den) {
            const std::int64_t t = (max_den - k0) / k1;
            const std::int64_t hs = t * h1 + h0, ks = t * k1 + k0;
            const double ds = std::fabs(x - static_cast<double>(hs) / static_cast<double>(ks));
            const double dc = std::fabs(x - static_cast<double>(h1) / static_cast<double>(k1));
            return ds < dc ? rational(bigint(hs), bigint(ks)) : rational(bigint(h1), bigint(k1));
        }
        const std::int64_t h2 = a * h1 + h0;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        const double frac = r - a_f;
        if (frac < 1e-15) break;
        r = 1.0 / frac;
    }
    return rational(bigint(h1), bigint(k1));
}

/// Rationalizes |v_i| into the unit ball and sorts decreasingly. The vector
/// is shrunk by 1e-3 steps until the rounded entries fit, which keeps the
/// denominators within the bound; exact rescaling is the fallback.
inline std::vector<rational> rationalize_unit(const std::vector<double>& v, std::int64_t max_den) {
    std::vector<rational> q;
    for (int k = 0; k < 1000; ++k) {
        const double shrink = 1.0 - 1e-3 * k;
        q.clear();
        for (double x : v) q.push_back(best_rational(std::fabs(x) * shrink, max_den));
        if (stress::sum_of_squares(q) <= rational(1)) break;
    }
    const rational s = stress::sum_of_squares(q);
    if (s > rational(1)) q = stress::scaled(std::move(q), stress::scale_factor(s, rational(1), 1 << 20));
    std::sort(q.begin(), q.end(), [](const rational& a, const rational& b) { return b < a; });
    return q;
}

/// Pr[|S| <= 1], exact for rational weights.
inline rational certified_abs_le_one(const weight_vector& v) {
    const probability_result p = prob_abs_shifted_le(v, real_value(0), rational(1));
    if (!p.exact) throw precision_exhausted("search: probability not decided exactly");
    return *p.exact;
}

inline restart_result run_restart(const search_config& cfg, std::size_t index) {
    auto g = stress::make_engine(cfg.seed, index);
    std::vector<double> v(cfg.n);
    for (double& x : v) x = detail::standard_normal(g);
    if (std::all_of(v.begin(), v.end(), [](double x) { return x == 0; })) v[0] = 1;
    detail::normalize(v);
    double current = detail::float_objective(v);
    std::vector<trajectory_point> traj{{0, current}};
    std::uint64_t iteration = 0;
    for (double step = cfg.initial_step; step >= cfg.min_step; step *= cfg.decay) {
        for (int sweep = 0; sweep < cfg.sweeps_per_step; ++sweep) {
            bool improved = false;
            for (std::size_t i = 0; i < cfg.n; ++i) {
                ++iteration;
                std::vector<double> trial = v;
                trial[i] += stress::uniform_below(g, 2) ? step : -step;
                if (std::all_of(trial.begin(), trial.end(), [](double x) { return x == 0; })) continue;
                detail::normalize(trial);
                const double value = detail::float_objective(trial);
                if (value <= current) {
                    improved = improved || value < current;
                    current = value;
                    v = std::move(trial);
                }
            }
            if (!improved) break;
        }
        traj.push_back({iteration, current});
    }
    const std::vector<rational> q = rationalize_unit(v, cfg.denominator_bound);
    weight_vector w = weight_vector::from_rationals(q);
    const rational p = certified_abs_le_one(w);
    return {std::move(w), p, std::move(traj)};
}

/// Random-restart local search; restart i is seeded with (seed, i) and the
/// best is the smallest certified probability, ties to the lowest index.
inline search_result minimize_prob(const search_config& cfg) {
    detail::validate(cfg);
    std::vector<restart_result> runs = parallel_map(cfg.restarts, [&](std::size_t i) { return run_restart(cfg, i); });
    search_result out;
    std::size_t best = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        out.restart_probabilities.push_back(runs[i].probability);
        if (runs[i].probability < runs[best].probability) best = i;
        if (!(runs[i].probability > main_constant_threshold()))
            out.lower_bound_check = verdict::refuted;
    }
    out.best = runs[best].vector;
    out.probability = runs[best].probability;
    out.best_restart = best;
    out.trajectory = std::move(runs[best].trajectory);
    return out;
}

enum class sweep_family_kind { uniform, two_block, dyadic };

inline std::string_view to_string(sweep_family_kind f) {
    switch (f) {
        case sweep_family_kind::uniform: return "uniform";
        case sweep_family_kind::two_block: return "two-block";
        case sweep_family_kind::dyadic: return "dyadic";
    }
    return "uniform";
}

inline sweep_family_kind parse_family(std::string_view s) {
    if (s == "uniform") return sweep_family_kind::uniform;
    if (s == "two-block") return sweep_family_kind::two_block;
    if (s == "dyadic") return sweep_family_kind::dyadic;
    throw parse_error("unknown family '" + std::string(s) + "' (uniform, two-block, dyadic)");
}

struct sweep_row {
    std::string parameters;
    weight_vector weights;
    probability_result probability;
};

namespace detail {

// nonincreasing k_1 >= ... >= k_n >= 1 with sum k_i^2 = remaining
inline void dyadic_rows(std::size_t n, int max_k, int remaining, std::vector<int>& cur,
                        std::vector<std::vector<int>>& out) {
    if (cur.size() == n) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    const int slots = static_cast<int>(n - cur.size());
    for (int k = std::min(max_k, 8); k >= 1; --k) {
        const int rest = remaining - k * k;
        if (rest < slots - 1) continue;                  // every later entry is at least 1
        if (rest > (slots - 1) * k * k) break;           // later entries cannot exceed k
        cur.push_back(k);
        dyadic_rows(n, k, rest, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

/// Pr[|S| <= 1] across a parameterized family of unit vectors, sorted by
/// probability (lower bound, then upper), ties in generation order.
///   uniform    n copies of sqrt(1/n)
///   two-block  n-1 copies of sqrt((1-b^2)/(n-1)) and b, b = j/16 for j = 0..16
///   dyadic     nonincreasing k_i/8 with k_i >= 1 and sum k_i^2 = 64
inline std::vector<sweep_row> sweep_family(sweep_family_kind family, std::size_t n) {
    if (n < 1) throw contract_error("sweep: n must be at least 1");
    if (n > max_counting_weights)
        throw capacity_error("sweep: at most " + std::to_string(max_counting_weights) + " weights");
    std::vector<std::pair<std::string, weight_vector>> inputs;
    switch (family) {
        case sweep_family_kind::uniform: {
            const real_value a(radical_sum::sqrt_of(rational(bigint(1), bigint(n))));
            inputs.emplace_back("a=sqrt(1/" + std::to_string(n) + ")", weight_vector(std::vector<real_value>(n, a)));
            break;
        }
        case sweep_family_kind::two_block: {
            for (int j = 0; j <= 16; ++j) {
                const rational b(bigint(j), bigint(16));
                std::vector<real_value> w;
                if (n == 1) {
                    w.emplace_back(b);
                    inputs.emplace_back("b=" + b.str(), weight_vector(std::move(w)));
                    continue;
                }
                const rational a2 = (rational(1) - b * b) / rational(bigint(n - 1));
                const real_value a(radical_sum::sqrt_of(a2));
                for (std::size_t i = 0; i + 1 < n; ++i) w.push_back(a);
                w.emplace_back(b);
                inputs.emplace_back("a=sqrt(" + a2.str() + ") b=" + b.str(), weight_vector(std::move(w)));
            }
            break;
        }
        case sweep_family_kind::dyadic: {
            std::vector<std::vector<int>> rows;
            std::vector<int> cur;
            detail::dyadic_rows(n, 8, 64, cur, rows);
            for (const auto& ks : rows) {
                std::vector<rational> w;
                std::string label = "k=(";
                for (std::size_t i = 0; i < ks.size(); ++i) {
                    w.emplace_back(bigint(ks[i]), bigint(8));
                    label += (i ? "," : "") + std::to_string(ks[i]);
                }
                inputs.emplace_back(label + ")/8", weight_vector::from_rationals(w));
            }
            break;
        }
    }
    std::vector<sweep_row> rows = parallel_map(inputs.size(), [&](std::size_t i) {
        return sweep_row{inputs[i].first, inputs[i].second,
                         prob_abs_shifted_le(inputs[i].second, real_value(0), rational(1))};
    });
    std::stable_sort(rows.begin(), rows.end(), [](const sweep_row& a, const sweep_row& b) {
        if (a.probability.lower != b.probability.lower) return a.probability.lower < b.probability.lower;
        return a.probability.upper < b.probability.upper;
    });
    return rows;
}

}  // namespace signsum
