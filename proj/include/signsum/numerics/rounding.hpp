#pragma once

#include <cmath>
#include <concepts>
#include <limits>

namespace signsum {

/// Customization point describing a binary floating type used as an interval
/// endpoint. The built-in specialization covers float, double and long double.
///
/// `exact_residuals` promises that fma() is correctly rounded and that the
/// basic operations round to nearest; the directed-rounding kernel then uses
/// error-free transformations and returns the tightest enclosing endpoint.
/// Types without it fall back to a one-ulp outward nudge, which only needs
/// the basic operations to be faithful.
template <class T>
struct float_traits;

template <std::floating_point T>
struct float_traits<T> {
    static constexpr bool exact_residuals = true;
    static constexpr int digits = std::numeric_limits<T>::digits;

    static T next_up(T x) { return std::nextafter(x, std::numeric_limits<T>::infinity()); }
    static T next_down(T x) { return std::nextafter(x, -std::numeric_limits<T>::infinity()); }
    static T fma(T a, T b, T c) { return std::fma(a, b, c); }

    // Smallest magnitude at which product and quotient residuals are exact.
    static T residual_floor() {
        return std::ldexp(T(1), std::numeric_limits<T>::min_exponent + digits + 2);
    }
};

namespace detail {

template <class T>
T overflow_toward_zero(T s) {
    return s > 0 ? std::numeric_limits<T>::max() : std::numeric_limits<T>::lowest();
}

// Rounds the exact value s + e down (e carries only its sign).
template <class T>
T settle_down(T s, T e) {
    return e < 0 ? float_traits<T>::next_down(s) : s;
}

template <class T>
T settle_up(T s, T e) {
    return e > 0 ? float_traits<T>::next_up(s) : s;
}

template <class T>
T two_sum_residual(T a, T b, T s) {
    const T bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

template <class T, bool Up>
T add_rounded(T a, T b) {
    using traits = float_traits<T>;
    const T s = a + b;
    if (!std::isfinite(s)) {
        if (std::isnan(s) || !std::isfinite(a) || !std::isfinite(b)) return s;
        // Finite operands overflowed: one side of the enclosure stays finite.
        if constexpr (Up) return s < 0 ? std::numeric_limits<T>::lowest() : s;
        else return s > 0 ? std::numeric_limits<T>::max() : s;
    }
    if constexpr (traits::exact_residuals) {
        const T e = two_sum_residual(a, b, s);
        return Up ? settle_up(s, e) : settle_down(s, e);
    } else {
        return Up ? traits::next_up(s) : traits::next_down(s);
    }
}

template <class T, bool Up>
T mul_rounded(T a, T b) {
    using traits = float_traits<T>;
    if (a == 0 || b == 0) return T(0);
    const T p = a * b;
    if (!std::isfinite(p)) {
        if (std::isnan(p) || !std::isfinite(a) || !std::isfinite(b)) return p;
        if constexpr (Up) return p < 0 ? std::numeric_limits<T>::lowest() : p;
        else return p > 0 ? std::numeric_limits<T>::max() : p;
    }
    if constexpr (traits::exact_residuals) {
        if (std::fabs(p) >= traits::residual_floor()) {
            const T e = traits::fma(a, b, -p);
            return Up ? settle_up(p, e) : settle_down(p, e);
        }
    }
    return Up ? traits::next_up(p) : traits::next_down(p);
}

template <class T, bool Up>
T div_rounded(T a, T b) {
    using traits = float_traits<T>;
    if (a == 0) return T(0);
    if (!std::isfinite(b) && std::isfinite(a)) return T(0);
    const T q = a / b;
    if (!std::isfinite(q)) {
        if (std::isnan(q) || !std::isfinite(a)) return q;
        if constexpr (Up) return q < 0 ? std::numeric_limits<T>::lowest() : q;
        else return q > 0 ? std::numeric_limits<T>::max() : q;
    }
    if constexpr (traits::exact_residuals) {
        if (q != 0 && std::fabs(a) >= traits::residual_floor() &&
            std::fabs(q * b) >= traits::residual_floor()) {
            // a - q*b is exact here; its sign (times sign(b)) is the sign of a/b - q.
            T r = traits::fma(-q, b, a);
            if (b < 0) r = -r;
            return Up ? settle_up(q, r) : settle_down(q, r);
        }
    }
    return Up ? traits::next_up(q) : traits::next_down(q);
}

template <class T, bool Up>
T sqrt_rounded(T a) {
    using traits = float_traits<T>;
    using std::sqrt;
    if (a == 0) return T(0);
    const T s = sqrt(a);
    if (!std::isfinite(s)) return s;
    if constexpr (traits::exact_residuals) {
        if (a >= traits::residual_floor()) {
            const T r = traits::fma(-s, s, a);
            return Up ? settle_up(s, r) : settle_down(s, r);
        }
    }
    if constexpr (Up) return traits::next_up(s);
    else {
        const T d = traits::next_down(s);
        return d < 0 ? T(0) : d;
    }
}

}  // namespace detail

template <class T> T add_down(T a, T b) { return detail::add_rounded<T, false>(a, b); }
template <class T> T add_up(T a, T b) { return detail::add_rounded<T, true>(a, b); }
template <class T> T sub_down(T a, T b) { return detail::add_rounded<T, false>(a, -b); }
template <class T> T sub_up(T a, T b) { return detail::add_rounded<T, true>(a, -b); }
template <class T> T mul_down(T a, T b) { return detail::mul_rounded<T, false>(a, b); }
template <class T> T mul_up(T a, T b) { return detail::mul_rounded<T, true>(a, b); }
template <class T> T div_down(T a, T b) { return detail::div_rounded<T, false>(a, b); }
template <class T> T div_up(T a, T b) { return detail::div_rounded<T, true>(a, b); }
template <class T> T sqrt_down(T a) { return detail::sqrt_rounded<T, false>(a); }
template <class T> T sqrt_up(T a) { return detail::sqrt_rounded<T, true>(a); }

}  // namespace signsum
