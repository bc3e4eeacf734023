#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "signsum/distribution/weights.hpp"
#include "signsum/errors.hpp"
#include "signsum/parallel.hpp"

// Meet-in-the-middle counting of sign patterns whose signed sum falls in a
// range. Three engines share the same shape:
//
//   integer    all weights and bounds rational; everything is scaled by the
//              common denominator and compared as integers
//   quadratic  all values in Q(sqrt s) for one square-free s; values are
//              pairs (a, b) meaning (a + b sqrt s) / D, compared exactly
//   interval   anything else; each partial sum is an enclosure and a pattern
//              whose membership cannot be decided is counted as ambiguous
namespace signsum {

inline constexpr std::size_t max_counting_weights = 40;
inline constexpr std::size_t max_materialized_weights = 24;

/// Range of the signed sum; a missing side is unbounded.
struct event_range {
    std::optional<real_value> lower;
    bool lower_inclusive = true;
    std::optional<real_value> upper;
    bool upper_inclusive = true;
};

/// definite <= true count <= possible, over all 2^n sign patterns.
struct pattern_count {
    std::uint64_t definite = 0;
    std::uint64_t possible = 0;
};

namespace detail {

// ---------------------------------------------------------------------------
// value arithmetics

struct int64_arith {
    using value = std::int64_t;
    value zero() const { return 0; }
    value add(value a, value b) const { return a + b; }
    value sub(value a, value b) const { return a - b; }
    bool less(value a, value b) const { return a < b; }
};

struct bigint_arith {
    using value = bigint;
    value zero() const { return 0; }
    value add(const value& a, const value& b) const { return a + b; }
    value sub(const value& a, const value& b) const { return a - b; }
    bool less(const value& a, const value& b) const { return a < b; }
};

// Elements of Z[sqrt s] with a floating shadow used to settle most comparisons.
struct quadratic_arith {
    struct value {
        bigint a;
        bigint b;
        long double approx = 0;
        long double magnitude = 0;
    };

    bigint s;
    long double root_s;

    explicit quadratic_arith(bigint radicand)
        : s(std::move(radicand)), root_s(std::sqrt(s.convert_to<long double>())) {}

    value make(bigint a, bigint b) const {
        const long double fa = a.convert_to<long double>();
        const long double fb = b.convert_to<long double>();
        return {std::move(a), std::move(b), fa + fb * root_s, std::fabs(fa) + std::fabs(fb) * root_s};
    }
    value zero() const { return make(0, 0); }
    value add(const value& x, const value& y) const { return make(x.a + y.a, x.b + y.b); }
    value sub(const value& x, const value& y) const { return make(x.a - y.a, x.b - y.b); }

    // sign of p + q sqrt s
    int sign(const bigint& p, const bigint& q) const {
        const int sp = p.sign();
        const int sq = q.sign();
        if (sq == 0) return sp;
        if (sp == 0 || sp == sq) return sq;
        const bigint p2 = p * p;
        const bigint q2s = q * q * s;
        if (p2 == q2s) return 0;
        return p2 > q2s ? sp : sq;
    }

    bool less(const value& x, const value& y) const {
        const long double d = x.approx - y.approx;
        // The shadows carry relative error far below 2^-50 of the magnitudes.
        if (std::fabs(d) > (x.magnitude + y.magnitude) * 0x1p-50L) return d < 0;
        return sign(x.a - y.a, x.b - y.b) < 0;
    }
};

template <class Arith>
struct sorted_half {
    std::vector<typename Arith::value> values;
    std::vector<std::uint64_t> counts;
};

// All signed sums of `weights`, sorted ascending with equal values merged.
template <class Arith>
sorted_half<Arith> enumerate_sorted(const Arith& ar, std::span<const typename Arith::value> weights) {
    using value = typename Arith::value;
    sorted_half<Arith> cur;
    cur.values.push_back(ar.zero());
    cur.counts.push_back(1);
    for (const value& w : weights) {
        const std::size_t m = cur.values.size();
        sorted_half<Arith> next;
        next.values.reserve(2 * m);
        next.counts.reserve(2 * m);
        auto push = [&](value v, std::uint64_t c) {
            if (!next.values.empty() && !ar.less(next.values.back(), v)) {
                next.counts.back() += c;
            } else {
                next.values.push_back(std::move(v));
                next.counts.push_back(c);
            }
        };
        // Merge (cur - w) with (cur + w); both are sorted.
        std::vector<value> minus, plus;
        minus.reserve(m);
        plus.reserve(m);
        for (const value& x : cur.values) {
            minus.push_back(ar.sub(x, w));
            plus.push_back(ar.add(x, w));
        }
        std::size_t i = 0, j = 0;
        while (i < m || j < m) {
            if (j >= m || (i < m && !ar.less(plus[j], minus[i]))) {
                push(std::move(minus[i]), cur.counts[i]);
                ++i;
            } else {
                push(std::move(plus[j]), cur.counts[j]);
                ++j;
            }
        }
        cur = std::move(next);
    }
    return cur;
}

template <class Arith>
struct scaled_bound {
    typename Arith::value value;
    bool inclusive;
};

// Number of pairs (l, r) with l + r inside the bounds, weighted by multiplicity.
template <class Arith>
std::uint64_t count_pairs(const Arith& ar, const sorted_half<Arith>& left, const sorted_half<Arith>& right,
                          const std::optional<scaled_bound<Arith>>& lower,
                          const std::optional<scaled_bound<Arith>>& upper) {
    using value = typename Arith::value;
    const std::size_t m = right.values.size();
    std::vector<std::uint64_t> prefix(m + 1, 0);
    for (std::size_t j = 0; j < m; ++j) prefix[j + 1] = prefix[j] + right.counts[j];

    auto block = [&](std::size_t begin, std::size_t end) -> std::uint64_t {
        if (begin >= end) return 0;
        std::uint64_t total = 0;
        std::size_t lo_idx = 0;  // right[lo_idx..] satisfy the lower bound
        std::size_t hi_idx = m;  // right[..hi_idx) satisfy the upper bound
        bool first = true;
        for (std::size_t i = begin; i < end; ++i) {
            const value& l = left.values[i];
            if (lower) {
                const value thr = ar.sub(lower->value, l);
                auto ok = [&](const value& r) { return lower->inclusive ? !ar.less(r, thr) : ar.less(thr, r); };
                if (first) {
                    lo_idx = static_cast<std::size_t>(
                        std::partition_point(right.values.begin(), right.values.end(),
                                             [&](const value& r) { return !ok(r); }) -
                        right.values.begin());
                } else {
                    while (lo_idx > 0 && ok(right.values[lo_idx - 1])) --lo_idx;
                }
            }
            if (upper) {
                const value thr = ar.sub(upper->value, l);
                auto ok = [&](const value& r) { return upper->inclusive ? !ar.less(thr, r) : ar.less(r, thr); };
                if (first) {
                    hi_idx = static_cast<std::size_t>(
                        std::partition_point(right.values.begin(), right.values.end(), ok) - right.values.begin());
                } else {
                    while (hi_idx > 0 && !ok(right.values[hi_idx - 1])) --hi_idx;
                }
            }
            first = false;
            if (hi_idx > lo_idx) total += left.counts[i] * (prefix[hi_idx] - prefix[lo_idx]);
        }
        return total;
    };
    std::uint64_t total = 0;
    for (std::uint64_t part : parallel_blocks(left.values.size(), block)) total += part;
    return total;
}

template <class Arith>
std::uint64_t count_with(const Arith& ar, const std::vector<typename Arith::value>& weights,
                         const std::optional<scaled_bound<Arith>>& lower,
                         const std::optional<scaled_bound<Arith>>& upper) {
    using value = typename Arith::value;
    const std::size_t split = (weights.size() + 1) / 2;
    const std::span<const value> all(weights);
    const auto left = enumerate_sorted(ar, all.subspan(0, split));
    const auto right = enumerate_sorted(ar, all.subspan(split));
    return count_pairs(ar, left, right, lower, upper);
}

// ---------------------------------------------------------------------------
// exact engines

inline bigint lcm(const bigint& a, const bigint& b) { return a / boost::multiprecision::gcd(a, b) * b; }

struct exact_problem {
    std::vector<radical_sum> weights;
    std::optional<radical_sum> lower, upper;
    bool lower_inclusive = true, upper_inclusive = true;
    bigint radicand = 1;  // 1 for the integer engine

    std::vector<const radical_sum*> all() const {
        std::vector<const radical_sum*> out;
        for (const auto& w : weights) out.push_back(&w);
        if (lower) out.push_back(&*lower);
        if (upper) out.push_back(&*upper);
        return out;
    }

    bigint common_denominator() const {
        bigint d = 1;
        for (const radical_sum* v : all())
            for (const auto& [r, c] : v->terms()) d = lcm(d, c.den());
        return d;
    }
};

// Rational part and sqrt-coefficient of v, both times d (integers).
inline std::pair<bigint, bigint> scaled_parts(const radical_sum& v, const bigint& d) {
    bigint a = 0, b = 0;
    for (const auto& [r, c] : v.terms()) {
        const bigint scaled = c.num() * (d / c.den());
        if (r == 1) a = scaled;
        else b = scaled;
    }
    return {a, b};
}

inline std::uint64_t count_integer(const exact_problem& p) {
    const bigint d = p.common_denominator();
    std::vector<bigint> w;
    bigint reach = 0;
    for (const auto& v : p.weights) {
        w.push_back(scaled_parts(v, d).first);
        reach += boost::multiprecision::abs(w.back());
    }
    // Bounds outside [-reach, reach] behave like +-(reach + 1).
    auto clamp = [&](bigint v) {
        if (v > reach) return bigint(reach + 1);
        if (v < -reach) return bigint(-reach - 1);
        return v;
    };
    std::optional<bigint> lo, hi;
    if (p.lower) lo = clamp(scaled_parts(*p.lower, d).first);
    if (p.upper) hi = clamp(scaled_parts(*p.upper, d).first);

    if (reach < (bigint(1) << 60)) {
        int64_arith ar;
        std::vector<std::int64_t> w64;
        for (const auto& x : w) w64.push_back(x.convert_to<std::int64_t>());
        std::optional<scaled_bound<int64_arith>> l64, h64;
        if (lo) l64 = scaled_bound<int64_arith>{lo->convert_to<std::int64_t>(), p.lower_inclusive};
        if (hi) h64 = scaled_bound<int64_arith>{hi->convert_to<std::int64_t>(), p.upper_inclusive};
        return count_with(ar, w64, l64, h64);
    }
    bigint_arith ar;
    std::optional<scaled_bound<bigint_arith>> lb, hb;
    if (lo) lb = scaled_bound<bigint_arith>{*lo, p.lower_inclusive};
    if (hi) hb = scaled_bound<bigint_arith>{*hi, p.upper_inclusive};
    return count_with(ar, w, lb, hb);
}

inline std::uint64_t count_quadratic(const exact_problem& p) {
    const bigint d = p.common_denominator();
    quadratic_arith ar(p.radicand);
    std::vector<quadratic_arith::value> w;
    for (const auto& v : p.weights) {
        auto [a, b] = scaled_parts(v, d);
        w.push_back(ar.make(std::move(a), std::move(b)));
    }
    std::optional<scaled_bound<quadratic_arith>> lb, hb;
    if (p.lower) {
        auto [a, b] = scaled_parts(*p.lower, d);
        lb = scaled_bound<quadratic_arith>{ar.make(std::move(a), std::move(b)), p.lower_inclusive};
    }
    if (p.upper) {
        auto [a, b] = scaled_parts(*p.upper, d);
        hb = scaled_bound<quadratic_arith>{ar.make(std::move(a), std::move(b)), p.upper_inclusive};
    }
    return count_with(ar, w, lb, hb);
}

// Builds an exact problem when every input lies in Q(sqrt s) for a single s.
inline std::optional<exact_problem> exact_form(const weight_vector& v, const event_range& range) {
    exact_problem p;
    std::set<bigint> radicands;
    for (const auto& e : v.entries()) {
        if (!e.is_exact()) return std::nullopt;
        p.weights.push_back(*e.exact());
    }
    if (range.lower) {
        if (!range.lower->is_exact()) return std::nullopt;
        p.lower = *range.lower->exact();
        p.lower_inclusive = range.lower_inclusive;
    }
    if (range.upper) {
        if (!range.upper->is_exact()) return std::nullopt;
        p.upper = *range.upper->exact();
        p.upper_inclusive = range.upper_inclusive;
    }
    for (const radical_sum* x : p.all())
        for (const auto& r : x->radicands()) radicands.insert(r);
    if (radicands.size() > 1) return std::nullopt;
    if (radicands.size() == 1) p.radicand = *radicands.begin();
    return p;
}

// ---------------------------------------------------------------------------
// interval engine

using real_t = long double;

inline std::vector<real_interval> enumerate_intervals(std::span<const real_interval> weights) {
    std::vector<real_interval> cur{real_interval(0.0L)};
    for (const auto& w : weights) {
        std::vector<real_interval> next;
        next.reserve(2 * cur.size());
        for (const auto& x : cur) {
            next.push_back(x - w);
            next.push_back(x + w);
        }
        cur = std::move(next);
    }
    return cur;
}

inline pattern_count count_interval(const weight_vector& v, const event_range& range) {
    std::vector<real_interval> w;
    for (const auto& e : v.entries()) w.push_back(e.enclosure());
    const std::size_t split = (w.size() + 1) / 2;
    const std::span<const real_interval> all(w);
    const auto left = enumerate_intervals(all.subspan(0, split));
    const auto right = enumerate_intervals(all.subspan(split));

    std::vector<real_t> r_lo, r_hi;
    real_t max_width = 0;
    for (const auto& r : right) {
        r_lo.push_back(r.lo());
        r_hi.push_back(r.hi());
        max_width = std::max(max_width, r.width());
    }
    std::sort(r_lo.begin(), r_lo.end());
    std::sort(r_hi.begin(), r_hi.end());
    const auto n_right = static_cast<std::uint64_t>(right.size());

    auto count_lt = [](const std::vector<real_t>& s, real_t x) {
        return static_cast<std::uint64_t>(std::lower_bound(s.begin(), s.end(), x) - s.begin());
    };
    auto count_le = [](const std::vector<real_t>& s, real_t x) {
        return static_cast<std::uint64_t>(std::upper_bound(s.begin(), s.end(), x) - s.begin());
    };

    const std::optional<real_interval> lower =
        range.lower ? std::optional<real_interval>(range.lower->enclosure()) : std::nullopt;
    const std::optional<real_interval> upper =
        range.upper ? std::optional<real_interval>(range.upper->enclosure()) : std::nullopt;

    auto block = [&](std::size_t begin, std::size_t end) -> pattern_count {
        pattern_count out;
        for (std::size_t i = begin; i < end; ++i) {
            const real_interval& l = left[i];
            // Certainly inside: R.lo >= a (or >) and R.hi <= b (or <).
            std::optional<real_t> a, b;
            if (lower) a = add_up(lower->hi(), -l.lo());
            if (upper) b = add_down(upper->lo(), -l.hi());
            auto fails_lower = [&](const real_interval& r) {
                return range.lower_inclusive ? r.lo() < *a : r.lo() <= *a;
            };
            auto fails_upper = [&](const real_interval& r) {
                return range.upper_inclusive ? r.hi() > *b : r.hi() >= *b;
            };
            std::uint64_t bad_lower = 0, bad_upper = 0, bad_both = 0;
            if (a) bad_lower = range.lower_inclusive ? count_lt(r_lo, *a) : count_le(r_lo, *a);
            if (b) bad_upper = n_right - (range.upper_inclusive ? count_le(r_hi, *b) : count_lt(r_hi, *b));
            if (a && b && !(add_up(*a, max_width) < *b)) {
                for (const auto& r : right)
                    if (fails_lower(r) && fails_upper(r)) ++bad_both;
            }
            out.definite += n_right - bad_lower - bad_upper + bad_both;

            // Certainly outside: below the lower bound or above the upper bound.
            std::optional<real_t> alpha, beta;
            if (lower) alpha = add_down(lower->lo(), -l.hi());
            if (upper) beta = add_up(upper->hi(), -l.lo());
            auto out_low = [&](const real_interval& r) {
                return range.lower_inclusive ? r.hi() < *alpha : r.hi() <= *alpha;
            };
            auto out_high = [&](const real_interval& r) {
                return range.upper_inclusive ? r.lo() > *beta : r.lo() >= *beta;
            };
            std::uint64_t low = 0, high = 0, both = 0;
            if (alpha) low = range.lower_inclusive ? count_lt(r_hi, *alpha) : count_le(r_hi, *alpha);
            if (beta) high = n_right - (range.upper_inclusive ? count_le(r_lo, *beta) : count_lt(r_lo, *beta));
            if (alpha && beta && *beta <= *alpha) {
                for (const auto& r : right)
                    if (out_low(r) && out_high(r)) ++both;
            }
            out.possible += n_right - low - high + both;
        }
        return out;
    };
    pattern_count total;
    for (const auto& part : parallel_blocks(left.size(), block)) {
        total.definite += part.definite;
        total.possible += part.possible;
    }
    return total;
}

}  // namespace detail

/// Counts sign patterns eps in {-1,+1}^n with sum eps_i v_i inside the range.
inline pattern_count count_patterns(const weight_vector& v, const event_range& range) {
    if (v.size() > max_counting_weights)
        throw capacity_error("at most " + std::to_string(max_counting_weights) + " weights are supported, got " +
                             std::to_string(v.size()));
    if (auto p = detail::exact_form(v, range)) {
        const std::uint64_t c = p->radicand == 1 ? detail::count_integer(*p) : detail::count_quadratic(*p);
        return {c, c};
    }
    return detail::count_interval(v, range);
}

}  // namespace signsum
