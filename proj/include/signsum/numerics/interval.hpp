#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "signsum/errors.hpp"
#include "signsum/numerics/rounding.hpp"

namespace signsum {

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
///
/// Every operation returns an enclosure of the exact set image: if x lies in
/// X and y lies in Y then x op y lies in X op Y. Endpoints may be infinite,
/// which is used to express one-sided bounds (e.g. a continued-fraction tail
/// known only to exceed t).
template <class T = long double>
class interval {
public:
    using value_type = T;

    constexpr interval() : lo_(0), hi_(0) {}
    constexpr interval(T point) : interval(point, point) {}  // NOLINT(google-explicit-constructor)
    constexpr interval(T lo, T hi) : lo_(lo), hi_(hi) {
        if (!(lo <= hi)) throw contract_error("interval: lo > hi or NaN endpoint");
    }

    constexpr T lo() const noexcept { return lo_; }
    constexpr T hi() const noexcept { return hi_; }

    /// Upper bound on hi - lo.
    T width() const { return sub_up(hi_, lo_); }
    T mid() const {
        if (std::isinf(lo_) || std::isinf(hi_)) return std::isinf(lo_) ? (std::isinf(hi_) ? T(0) : hi_) : lo_;
        return lo_ / 2 + hi_ / 2;
    }
    bool is_point() const noexcept { return lo_ == hi_; }

    bool contains(T x) const noexcept { return lo_ <= x && x <= hi_; }
    bool contains(const interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool contains_zero() const noexcept { return lo_ <= 0 && 0 <= hi_; }
    bool overlaps(const interval& o) const noexcept { return lo_ <= o.hi_ && o.lo_ <= hi_; }

    interval operator-() const { return interval(-hi_, -lo_); }
    interval operator+() const { return *this; }

    interval& operator+=(const interval& o) { return *this = *this + o; }
    interval& operator-=(const interval& o) { return *this = *this - o; }
    interval& operator*=(const interval& o) { return *this = *this * o; }
    interval& operator/=(const interval& o) { return *this = *this / o; }

    friend interval operator+(const interval& a, const interval& b) {
        return interval(add_down(a.lo_, b.lo_), add_up(a.hi_, b.hi_));
    }
    friend interval operator-(const interval& a, const interval& b) {
        return interval(sub_down(a.lo_, b.hi_), sub_up(a.hi_, b.lo_));
    }
    friend interval operator*(const interval& a, const interval& b) {
        const T lo = std::min({mul_down(a.lo_, b.lo_), mul_down(a.lo_, b.hi_), mul_down(a.hi_, b.lo_),
                               mul_down(a.hi_, b.hi_)});
        const T hi = std::max({mul_up(a.lo_, b.lo_), mul_up(a.lo_, b.hi_), mul_up(a.hi_, b.lo_),
                               mul_up(a.hi_, b.hi_)});
        return interval(lo, hi);
    }
    friend interval operator/(const interval& a, const interval& b) {
        if (b.contains_zero()) throw std::domain_error("interval: division by an interval containing 0");
        const T lo = std::min({div_down(a.lo_, b.lo_), div_down(a.lo_, b.hi_), div_down(a.hi_, b.lo_),
                               div_down(a.hi_, b.hi_)});
        const T hi = std::max({div_up(a.lo_, b.lo_), div_up(a.lo_, b.hi_), div_up(a.hi_, b.lo_),
                               div_up(a.hi_, b.hi_)});
        return interval(lo, hi);
    }

    friend bool operator==(const interval& a, const interval& b) = default;

    friend std::ostream& operator<<(std::ostream& os, const interval& x) {
        return os << '[' << x.lo_ << ", " << x.hi_ << ']';
    }

private:
    T lo_;
    T hi_;
};

template <class T>
interval<T> sqrt(const interval<T>& x) {
    if (x.lo() < 0) throw std::domain_error("interval sqrt: negative input");
    return interval<T>(sqrt_down(x.lo()), sqrt_up(x.hi()));
}

/// Tighter than x * x when x straddles zero.
template <class T>
interval<T> square(const interval<T>& x) {
    if (x.lo() >= 0) return interval<T>(mul_down(x.lo(), x.lo()), mul_up(x.hi(), x.hi()));
    if (x.hi() <= 0) return interval<T>(mul_down(x.hi(), x.hi()), mul_up(x.lo(), x.lo()));
    const T m = std::max(-x.lo(), x.hi());
    return interval<T>(T(0), mul_up(m, m));
}

template <class T>
interval<T> hull(const interval<T>& a, const interval<T>& b) {
    return interval<T>(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

/// Intersection; throws if the operands are disjoint.
template <class T>
interval<T> intersect(const interval<T>& a, const interval<T>& b) {
    if (!a.overlaps(b)) throw std::domain_error("interval: empty intersection");
    return interval<T>(std::max(a.lo(), b.lo()), std::min(a.hi(), b.hi()));
}

// Certified comparisons: true only when every pair of members satisfies the relation.
template <class T> bool certainly_ge(const interval<T>& a, const interval<T>& b) { return a.lo() >= b.hi(); }
template <class T> bool certainly_gt(const interval<T>& a, const interval<T>& b) { return a.lo() > b.hi(); }
template <class T> bool certainly_le(const interval<T>& a, const interval<T>& b) { return a.hi() <= b.lo(); }
template <class T> bool certainly_lt(const interval<T>& a, const interval<T>& b) { return a.hi() < b.lo(); }

}  // namespace signsum
