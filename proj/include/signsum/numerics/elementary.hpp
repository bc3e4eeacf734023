#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "signsum/numerics/interval.hpp"

namespace signsum {

namespace detail {

// Enclosure of e^x for a single float x.
//
// x is scaled by 2^-m into |y| <= 1/2, the Taylor polynomial of e^y is
// summed in interval arithmetic with the Lagrange remainder
// |R_N| <= 2 |y|^(N+1) / (N+1)! added as a symmetric error term, and the
// result is squared m times.
template <class T>
interval<T> exp_point(T x) {
    using limits = std::numeric_limits<T>;
    if (x == 0) return interval<T>(T(1));
    if (std::isinf(x)) return x < 0 ? interval<T>(T(0)) : interval<T>(limits::max(), limits::infinity());
    // 0.6931 < ln 2, so these cutoffs are conservative.
    const T underflow_cut = T(limits::min_exponent - limits::digits - 1) * T(0.6931);
    const T overflow_cut = T(limits::max_exponent) * T(0.6932);
    if (x < underflow_cut) return interval<T>(T(0), limits::denorm_min());
    if (x > overflow_cut) return interval<T>(limits::max(), limits::infinity());

    const int m = std::max(0, std::ilogb(x) + 2);
    const T y = std::ldexp(x, -m);  // exact: x is far from the subnormal range here
    const interval<T> yi(y);
    const T ay = std::fabs(y);

    std::vector<interval<T>> terms;
    interval<T> term(T(1));
    T term_bound = 1;  // upper bound on |y|^k / k!
    const T eps = std::ldexp(T(1), -(limits::digits + 8));
    T remainder = 0;
    int k = 0;
    while (true) {
        ++k;
        term = term * yi / interval<T>(static_cast<T>(k));
        terms.push_back(term);
        term_bound = div_up(mul_up(term_bound, ay), static_cast<T>(k));
        const T next = div_up(mul_up(term_bound, ay), static_cast<T>(k + 1));
        if (next < eps || k > 80) {
            remainder = mul_up(T(2), next);
            break;
        }
    }
    // smallest terms first keeps the outward rounding at their scale
    interval<T> sum(-remainder, remainder);
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) sum += *it;
    sum += interval<T>(T(1));
    for (int i = 0; i < m; ++i) {
        sum = square(sum);
        if (sum.lo() < 0) sum = interval<T>(T(0), sum.hi());
    }
    return sum;
}

}  // namespace detail

/// e^x, monotone enclosure.
template <class T>
interval<T> exp(const interval<T>& x) {
    const interval<T> lo = detail::exp_point(x.lo());
    const interval<T> hi = x.is_point() ? lo : detail::exp_point(x.hi());
    return interval<T>(std::max(lo.lo(), T(0)), hi.hi());
}

}  // namespace signsum
