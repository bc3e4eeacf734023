#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "signsum/numerics/interval.hpp"
#include "signsum/numerics/rational.hpp"

namespace signsum {

namespace detail {

// Exact conversion of a non-negative integer with at most digits+1 bits
// (the extra bit only for powers of two).
template <class T>
T integer_to_float(const bigint& q) {
    const unsigned bits = q.is_zero() ? 0 : boost::multiprecision::msb(q) + 1;
    T acc = 0;
    for (int shift = static_cast<int>((bits + 31) / 32) * 32 - 32; shift >= 0; shift -= 32) {
        const auto limb = static_cast<std::uint32_t>((q >> shift) & 0xffffffffu);
        acc = std::ldexp(acc, 32) + static_cast<T>(limb);
    }
    return acc;
}

}  // namespace detail

/// Exact value of a finite binary float.
template <class T>
rational to_rational(T x) {
    if (!std::isfinite(x)) throw std::domain_error("to_rational: non-finite value");
    if (x == 0) return rational();
    int e = 0;
    T m = std::frexp(std::fabs(x), &e);
    constexpr int limbs = (std::numeric_limits<T>::digits + 31) / 32;
    bigint acc = 0;
    for (int i = 0; i < limbs; ++i) {
        m = std::ldexp(m, 32);
        const T whole = std::floor(m);
        acc = (acc << 32) + static_cast<std::uint32_t>(whole);
        m -= whole;
    }
    const int shift = e - 32 * limbs;
    rational r = shift >= 0 ? rational(acc << shift) : rational(acc, bigint(1) << (-shift));
    return x < 0 ? -r : r;
}

/// Tightest enclosure of r in T: a single point when r is representable,
/// otherwise the two adjacent floats around r (width one ulp).
template <class T = long double>
interval<T> enclose(const rational& r) {
    using limits = std::numeric_limits<T>;
    if (r.is_zero()) return interval<T>(T(0));
    const bigint a = boost::multiprecision::abs(r.num());
    const bigint& d = r.den();
    constexpr int digits = limits::digits;

    const long bn = static_cast<long>(boost::multiprecision::msb(a));
    const long bd = static_cast<long>(boost::multiprecision::msb(d));
    long s = digits - (bn - bd);
    bigint q, rem;
    for (int attempt = 0; attempt < 2; ++attempt) {
        const bigint num = s >= 0 ? bigint(a << s) : a;
        const bigint den = s >= 0 ? d : bigint(d << (-s));
        boost::multiprecision::divide_qr(num, den, q, rem);
        if (boost::multiprecision::msb(q) < static_cast<unsigned>(digits)) break;
        --s;
    }
    // |r| lies in [q, q+1] * 2^-s, with q having exactly `digits` bits.
    const long exponent = digits - 1 - s;
    interval<T> mag;
    if (exponent < limits::min_exponent - 1) {
        mag = interval<T>(T(0), limits::min());
    } else if (exponent > limits::max_exponent - 1) {
        mag = interval<T>(limits::max(), limits::infinity());
    } else {
        const T lo = std::ldexp(detail::integer_to_float<T>(q), static_cast<int>(-s));
        const T hi = rem.is_zero() ? lo : std::ldexp(detail::integer_to_float<T>(q + 1), static_cast<int>(-s));
        mag = interval<T>(lo, hi);
    }
    return r.sign() < 0 ? -mag : mag;
}

}  // namespace signsum
