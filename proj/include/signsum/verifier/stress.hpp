#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "signsum/distribution/distribution.hpp"

// Seeded generators of random instances. Every instance draws from its own
// mt19937_64 seeded by (seed, index) through std::seed_seq, so a suite gives
// the same instances no matter how it is split across workers. Bounded draws
// use rejection sampling rather than std::uniform_int_distribution, whose
// algorithm differs between standard libraries.
namespace signsum::stress {

using engine = std::mt19937_64;

inline engine make_engine(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return engine(seq);
}

/// Uniform on [0, n), n > 0.
inline std::uint64_t uniform_below(engine& g, std::uint64_t n) {
    const std::uint64_t limit = engine::max() - engine::max() % n;
    std::uint64_t x;
    do x = g();
    while (x >= limit);
    return x % n;
}

/// Uniform on [lo, hi].
inline std::int64_t uniform_int(engine& g, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform_below(g, static_cast<std::uint64_t>(hi - lo) + 1));
}

/// Uniform double on [0, 1) with 53 random bits.
inline double uniform_unit(engine& g) { return static_cast<double>(g() >> 11) * 0x1p-53; }

/// p/q with 1 <= q <= max_den and |p| <= q.
inline rational random_entry(engine& g, std::int64_t max_den = 64) {
    const std::int64_t q = uniform_int(g, 1, max_den);
    return rational(bigint(uniform_int(g, -q, q)), bigint(q));
}

inline rational sum_of_squares(const std::vector<rational>& v) {
    rational s;
    for (const auto& x : v) s = s + x * x;
    return s;
}

/// Largest f = p/den with f^2 s <= budget; s > 0.
inline rational scale_factor(const rational& s, const rational& budget, std::int64_t den = 1024) {
    const long double guess = std::sqrt(budget.approx() / s.approx());
    auto p = static_cast<std::int64_t>(std::floor(guess * static_cast<long double>(den))) + 1;
    for (;; --p) {
        const rational f{bigint(p), bigint(den)};
        if (p <= 0 || f * f * s <= budget) return p <= 0 ? rational() : f;
    }
}

inline std::vector<rational> scaled(std::vector<rational> v, const rational& f) {
    for (auto& x : v) x = x * f;
    return v;
}

/// Random rational vector of length 1..n_max, nonzero, scaled so that
/// sum v_i^2 <= 1 (and close to it).
inline std::vector<rational> random_unit_rationals(engine& g, std::int64_t n_max = 14) {
    const auto n = static_cast<std::size_t>(uniform_int(g, 1, n_max));
    std::vector<rational> v;
    do {
        v.clear();
        for (std::size_t i = 0; i < n; ++i) v.push_back(random_entry(g));
    } while (sum_of_squares(v).is_zero());
    return scaled(std::move(v), scale_factor(sum_of_squares(v), rational(1)));
}

inline weight_vector random_unit_vector(engine& g, std::int64_t n_max = 14) {
    return weight_vector::from_rationals(random_unit_rationals(g, n_max));
}

struct lemma1_case {
    weight_vector v;
    rational c;
    rational x;
};

/// x uniform-ish in [-1, 1]; v scaled into the ball of radius (1+|x|) and
/// c = sum v_i^2 / (1+|x|)^2, so the budget is met with equality and c is in (0, 1].
inline lemma1_case random_lemma1_case(engine& g, std::int64_t n_max = 14) {
    const rational x = random_entry(g);
    const rational shift = rational(1) + x.abs();
    const rational budget = shift * shift;
    const auto n = static_cast<std::size_t>(uniform_int(g, 1, n_max));
    std::vector<rational> v;
    do {
        v.clear();
        for (std::size_t i = 0; i < n; ++i) v.push_back(random_entry(g) * rational(2));
    } while (sum_of_squares(v).is_zero());
    const rational s = sum_of_squares(v);
    if (s > budget) v = scaled(std::move(v), scale_factor(s, budget));
    const rational c = sum_of_squares(v) / budget;
    return {weight_vector::from_rationals(v), c, x};
}

struct bd_case {
    weight_vector v;
    rational x;
};

/// Unit-ball vector; x is an atom of its signed sum or the midpoint of two
/// neighbouring atoms.
inline bd_case random_bd_case(engine& g, std::int64_t n_max = 14) {
    const std::vector<rational> v = random_unit_rationals(g, n_max);
    const weight_vector w = weight_vector::from_rationals(v);
    const signed_sum_distribution d = enumerate_distribution(w);
    const std::size_t m = d.atoms.size();
    const std::size_t i = uniform_below(g, m);
    const rational atom = d.atoms[i].value.to_rational();
    if (i + 1 < m && uniform_below(g, 2) == 1) {
        const rational next = d.atoms[i + 1].value.to_rational();
        return {w, (atom + next) / rational(2)};
    }
    return {w, atom};
}

}  // namespace signsum::stress
