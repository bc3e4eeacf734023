#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "signsum/distribution/counting.hpp"
#include "signsum/distribution/weights.hpp"

namespace signsum {

/// Probability of an event over the 2^n uniformly random sign patterns.
struct probability_result {
    std::optional<rational> exact;
    rational lower;
    rational upper;
    std::uint64_t ambiguous_atoms = 0;

    real_interval bounds() const { return real_interval(enclose(lower).lo(), enclose(upper).hi()); }
};

/// Exact multiset of the 2^n signed sums.
struct signed_sum_distribution {
    struct atom {
        real_value value;
        std::uint64_t multiplicity;
    };

    std::vector<atom> atoms;
    bigint total;
    weight_mode mode = weight_mode::exact;
};

struct mass_check_summary {
    bool pass = true;
    bigint total;
    bigint counted;
    bool symmetric = true;
    std::vector<std::string> diagnostics;
};

namespace detail {

inline probability_result to_probability(const pattern_count& c, std::size_t n) {
    probability_result out;
    const rational scale = rational::pow2(-static_cast<int>(n));
    out.lower = rational(bigint(c.definite)) * scale;
    out.upper = rational(bigint(c.possible)) * scale;
    out.ambiguous_atoms = c.possible - c.definite;
    if (c.definite == c.possible) out.exact = out.lower;
    return out;
}

}  // namespace detail

/// Pr[S in range] for S = sum a_i v_i.
inline probability_result probability_of(const weight_vector& v, const event_range& range) {
    return detail::to_probability(count_patterns(v, range), v.size());
}

/// Pr[|x + Y| <= t], Y = sum a_i v_i, both ends inclusive.
inline probability_result prob_abs_shifted_le(const weight_vector& v, const real_value& x, const rational& t) {
    if (t.sign() < 0) throw contract_error("threshold must be non-negative");
    event_range range;
    range.lower = real_value(-t) - x;
    range.upper = real_value(t) - x;
    return probability_of(v, range);
}

/// Pr[S >= x].
inline probability_result prob_tail_ge(const weight_vector& v, const real_value& x) {
    event_range range;
    range.lower = x;
    return probability_of(v, range);
}

/// Pr[S > x].
inline probability_result prob_tail_gt(const weight_vector& v, const real_value& x) {
    event_range range;
    range.lower = x;
    range.lower_inclusive = false;
    return probability_of(v, range);
}

namespace detail {

inline real_value from_scaled(const bigint& a, const bigint& b, const bigint& d, const bigint& s) {
    radical_sum v = rational(a, d);
    if (b != 0) v = v + radical_sum::term(rational(b, d), s);
    return real_value(v);
}

}  // namespace detail

/// Every signed sum with its multiplicity, sorted increasingly.
inline signed_sum_distribution enumerate_distribution(const weight_vector& v) {
    if (v.size() > max_materialized_weights)
        throw capacity_error("at most " + std::to_string(max_materialized_weights) +
                             " weights can be enumerated atom by atom, got " + std::to_string(v.size()));
    signed_sum_distribution out;
    out.total = bigint(1) << v.size();
    out.mode = v.mode();

    if (auto p = detail::exact_form(v, event_range{})) {
        const bigint d = p->common_denominator();
        if (p->radicand == 1) {
            detail::bigint_arith ar;
            std::vector<bigint> w;
            for (const auto& x : p->weights) w.push_back(detail::scaled_parts(x, d).first);
            const auto all = detail::enumerate_sorted(ar, std::span<const bigint>(w));
            for (std::size_t i = 0; i < all.values.size(); ++i)
                out.atoms.push_back({real_value(rational(all.values[i], d)), all.counts[i]});
        } else {
            detail::quadratic_arith ar(p->radicand);
            std::vector<detail::quadratic_arith::value> w;
            for (const auto& x : p->weights) {
                auto [a, b] = detail::scaled_parts(x, d);
                w.push_back(ar.make(std::move(a), std::move(b)));
            }
            const auto all = detail::enumerate_sorted(ar, std::span<const detail::quadratic_arith::value>(w));
            for (std::size_t i = 0; i < all.values.size(); ++i)
                out.atoms.push_back({detail::from_scaled(all.values[i].a, all.values[i].b, d, p->radicand),
                                     all.counts[i]});
        }
        return out;
    }

    std::vector<real_interval> w;
    for (const auto& e : v.entries()) w.push_back(e.enclosure());
    auto sums = detail::enumerate_intervals(w);
    std::sort(sums.begin(), sums.end(), [](const real_interval& a, const real_interval& b) {
        return a.lo() != b.lo() ? a.lo() < b.lo() : a.hi() < b.hi();
    });
    for (const auto& s : sums) {
        if (!out.atoms.empty() && out.atoms.back().value.enclosure() == s) ++out.atoms.back().multiplicity;
        else out.atoms.push_back({real_value(s), 1});
    }
    return out;
}

/// w_i = -v_i / (sqrt(c) (1 + |x|)), which has sum w_i^2 <= 1 whenever
/// sum v_i^2 <= c (1 + |x|)^2. Exact weights stay exact (as radical sums).
inline weight_vector normalize_for_bd(const weight_vector& v, const rational& c, const rational& x) {
    if (c.sign() <= 0) throw contract_error("normalize_for_bd: c must be positive");
    if (x.abs() > rational(1)) throw contract_error("normalize_for_bd: |x| must be at most 1");
    const rational shift = rational(1) + x.abs();
    const rational budget = c * shift * shift;
    const norm_status status = v.check_norm(budget);
    if (status != norm_status::certified)
        throw contract_error("normalize_for_bd: sum of squares exceeds c(1+|x|)^2 or is undecided");
    const real_value factor = real_value(radical_sum::sqrt_of(rational(1) / c)) * real_value(-(rational(1) / shift));
    std::vector<real_value> out;
    for (const auto& e : v.entries()) out.push_back(e * factor);
    return weight_vector(std::move(out));
}

/// Recomputes the total mass and the sign-flip pairing of atoms.
inline mass_check_summary quantile_mass_check(const signed_sum_distribution& d) {
    mass_check_summary out;
    out.total = d.total;
    out.counted = 0;
    for (const auto& a : d.atoms) out.counted += a.multiplicity;
    if (out.counted != out.total) {
        out.pass = false;
        out.diagnostics.push_back("multiplicities sum to " + out.counted.str() + ", expected " + out.total.str());
    }
    const std::size_t m = d.atoms.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto& a = d.atoms[i];
        const auto& b = d.atoms[m - 1 - i];
        bool mirrored = a.multiplicity == b.multiplicity;
        if (a.value.is_exact() && b.value.is_exact()) {
            mirrored = mirrored && *a.value.exact() == -*b.value.exact();
        } else {
            mirrored = mirrored && a.value.enclosure() == -b.value.enclosure();
        }
        if (!mirrored) {
            out.symmetric = false;
            out.pass = false;
            out.diagnostics.push_back("atom " + a.value.str() + " has no mirror image with equal multiplicity");
        }
    }
    for (std::size_t i = 1; i < m; ++i) {
        const auto& prev = d.atoms[i - 1].value;
        const auto& cur = d.atoms[i].value;
        if (prev.is_exact() && cur.is_exact()) {
            const auto s = (*cur.exact() - *prev.exact()).exact_sign();
            if (s && *s <= 0) {
                out.pass = false;
                out.diagnostics.push_back("atoms not strictly increasing at index " + std::to_string(i));
            }
        }
    }
    return out;
}

}  // namespace signsum
