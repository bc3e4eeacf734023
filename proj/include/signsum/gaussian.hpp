#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "signsum/errors.hpp"
#include "signsum/numerics/convert.hpp"
#include "signsum/numerics/elementary.hpp"
#include "signsum/numerics/interval.hpp"
#include "signsum/numerics/rational.hpp"
#include "signsum/verdict.hpp"

/// Certified evaluation of the standard normal upper tail
///
///     Q(x) = (2 pi)^(-1/2) * integral_x^inf exp(-t^2/2) dt
///
/// and of the quantities built from it:
///
///     F(c)      = 1/2 - Q(1/sqrt(c)) / (4 Q(sqrt 2))
///     bound(x)  = Q(x) / (4 Q(sqrt 2))
///
/// All results are interval enclosures. For 0 < t <= 3 the tail comes from
///
///     Q(t) = 1/2 - phi(t) * sum_n t^(2n+1) / (1*3*...*(2n+1))
///
/// whose terms are positive with ratio t^2/(2n+3), so the truncation error is
/// bracketed by a geometric tail. For t > 3 it comes from the Laplace
/// continued fraction of the Mills ratio
///
///     Q(t)/phi(t) = 1/(t + 1/(t + 2/(t + 3/(t + ...))))
///
/// evaluated backwards from the enclosure [t, inf) of the discarded tail,
/// which brackets the value for every truncation depth.
namespace signsum::gaussian {

inline constexpr long double default_target_width = 1e-12L;

/// Threshold between the power series and the continued fraction.
inline constexpr long double series_limit = 3.0L;

template <class T = long double>
struct q_value {
    interval<T> argument;
    interval<T> enclosure;
};

template <class T = long double>
struct f_value {
    interval<T> c;
    interval<T> enclosure;
};

template <class T = long double>
const interval<T>& pi() {
    static const interval<T> value = [] {
        // pi truncated after 59 decimals; the true value lies within 1e-59 above.
        const rational lo = rational::parse("3.14159265358979323846264338327950288419716939937510582097494");
        const rational hi = lo + rational(bigint(1), bigint("1" + std::string(59, '0')));
        return interval<T>(enclose<T>(lo).lo(), enclose<T>(hi).hi());
    }();
    return value;
}

template <class T = long double>
const interval<T>& inv_sqrt_2pi() {
    static const interval<T> value = interval<T>(T(1)) / sqrt(interval<T>(T(2)) * pi<T>());
    return value;
}

template <class T = long double>
const interval<T>& sqrt2() {
    static const interval<T> value = sqrt(interval<T>(T(2)));
    return value;
}

/// phi(t) = exp(-t^2/2) / sqrt(2 pi).
template <class T>
interval<T> normal_density(const interval<T>& t) {
    const interval<T> half_sq = square(t) * interval<T>(T(0.5));
    return exp(-half_sq) * inv_sqrt_2pi<T>();
}

namespace detail {

template <class T>
interval<T> q_series(T t, T target_width) {
    const interval<T> ti(t);
    const interval<T> t2 = square(ti);
    const interval<T> phi = normal_density(ti);
    interval<T> term = ti;
    interval<T> sum = ti;
    for (int n = 0;; ++n) {
        const interval<T> next = term * t2 / interval<T>(static_cast<T>(2 * n + 3));
        // ratio of the term after `next` to `next`, bounded above
        const T ratio = div_up(t2.hi(), static_cast<T>(2 * n + 5));
        if (ratio <= T(0.5)) {
            const T tail = mul_up(T(2), next.hi());
            if (mul_up(phi.hi(), tail) <= target_width / 8 || n > 400) {
                sum += interval<T>(T(0), tail);
                break;
            }
        }
        sum += next;
        term = next;
    }
    return interval<T>(T(0.5)) - phi * sum;
}

template <class T>
interval<T> mills_ratio_cf(T t, int depth) {
    const interval<T> ti(t);
    interval<T> e(t, std::numeric_limits<T>::infinity());
    for (int k = depth - 1; k >= 0; --k) e = ti + interval<T>(static_cast<T>(k + 1)) / e;
    return interval<T>(T(1)) / e;
}

template <class T>
interval<T> q_continued_fraction(T t, T target_width) {
    const interval<T> phi = normal_density(interval<T>(t));
    interval<T> best = phi * mills_ratio_cf(t, 16);
    for (int depth = 32; depth <= 8192; depth *= 2) {
        if (best.width() <= target_width / 8) break;
        const interval<T> next = phi * mills_ratio_cf(t, depth);
        if (!(next.width() < best.width())) {
            best = next;
            break;
        }
        best = next;
    }
    return best;
}

template <class T>
interval<T> q_point(T t, T target_width) {
    if (t == 0) return interval<T>(T(0.5));
    if (t < 0) return interval<T>(T(1)) - q_point(-t, target_width);
    return t <= T(series_limit) ? q_series(t, target_width) : q_continued_fraction(t, target_width);
}

template <class T>
interval<T> clamp_probability(const interval<T>& x) {
    return interval<T>(std::max(x.lo(), T(0)), std::min(x.hi(), T(1)));
}

}  // namespace detail

/// Enclosure of Q over the whole argument interval. For a point argument the
/// width is at most target_width, otherwise precision_exhausted is thrown.
template <class T>
interval<T> q_tail(const interval<T>& x, T target_width = static_cast<T>(default_target_width)) {
    if (!(target_width > 0)) throw contract_error("q_tail: target width must be positive");
    if (std::isnan(x.lo()) || std::isnan(x.hi())) throw contract_error("q_tail: NaN argument");
    // Q is decreasing: the upper end comes from x.lo, the lower end from x.hi.
    const interval<T> at_hi = detail::q_point(x.hi(), target_width);
    const interval<T> at_lo = x.is_point() ? at_hi : detail::q_point(x.lo(), target_width);
    const interval<T> out = detail::clamp_probability(interval<T>(at_hi.lo(), at_lo.hi()));
    if (x.is_point() && out.width() > target_width)
        throw precision_exhausted("q_tail: cannot reach width " + std::to_string(static_cast<double>(target_width)));
    return out;
}

template <class T>
q_value<T> q_tail_value(const interval<T>& x, T target_width = static_cast<T>(default_target_width)) {
    return {x, q_tail(x, target_width)};
}

/// Q(x) / (4 Q(sqrt 2)). Exceeds 1 for small x, which is allowed.
template <class T>
interval<T> bd_bound(const interval<T>& x, T target_width = static_cast<T>(default_target_width)) {
    const interval<T> denom = interval<T>(T(4)) * q_tail(sqrt2<T>(), target_width / 4);
    return q_tail(x, target_width / 4) / denom;
}

/// F(c) = 1/2 - Q(1/sqrt c) / (4 Q(sqrt 2)) over the whole interval c.
template <class T>
interval<T> f_of_c(const interval<T>& c, T target_width = static_cast<T>(default_target_width)) {
    if (!(c.lo() > 0)) throw contract_error("f_of_c: c must be positive");
    const interval<T> t = interval<T>(T(1)) / sqrt(c);
    const interval<T> out = interval<T>(T(0.5)) - bd_bound(t, target_width);
    return interval<T>(out.lo(), std::min(out.hi(), T(0.5)));
}

template <class T>
f_value<T> f_of_c_value(const interval<T>& c, T target_width = static_cast<T>(default_target_width)) {
    return {c, f_of_c(c, target_width)};
}

template <class T = long double>
interval<T> f_of_c(const rational& c, T target_width = static_cast<T>(default_target_width)) {
    return f_of_c(enclose<T>(c), target_width);
}

/// Checks Q''(t) + t Q'(t) = 0 at `samples` evenly spaced points of x, with
/// Q'(t) = -phi(t) and Q''(t) = t phi(t) taken from their closed forms.
/// Verified when every enclosure of the left side contains 0.
template <class T>
verdict q_second_derivative_identity_check(const interval<T>& x, int samples = 9) {
    if (!(x.lo() > 0)) throw contract_error("identity check: x must be positive");
    std::vector<T> points{x.lo()};
    if (!x.is_point()) {
        for (int i = 1; i < samples - 1; ++i)
            points.push_back(x.lo() + (x.hi() - x.lo()) * static_cast<T>(i) / static_cast<T>(samples - 1));
        points.push_back(x.hi());
    }
    for (T p : points) {
        const interval<T> t(p);
        const interval<T> phi = normal_density(t);
        const interval<T> q1 = -phi;
        const interval<T> q2 = t * phi;
        const interval<T> residual = q2 + t * q1;
        if (!residual.contains_zero()) return verdict::refuted;
    }
    return verdict::verified;
}

}  // namespace signsum::gaussian
