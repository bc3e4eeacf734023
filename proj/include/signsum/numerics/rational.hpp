#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "signsum/errors.hpp"

namespace signsum {

using bigint = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Every constructor and arithmetic result is reduced to lowest terms with a
/// positive denominator, so equality is structural and sums of many
/// rationals stay as small as the values allow.
class rational {
public:
    rational() : num_(0), den_(1) {}

    template <std::integral I>
    rational(I n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

    rational(bigint n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)

    rational(bigint n, bigint d) : num_(std::move(n)), den_(std::move(d)) {
        if (den_ == 0) throw std::domain_error("rational: zero denominator");
        normalize();
    }

    /// Parses "p/q", an integer, or a finite decimal ("-0.125", "3e-4").
    static rational parse(std::string_view text);

    /// 2^e for any integer e.
    static rational pow2(int e) {
        bigint one = 1;
        return e >= 0 ? rational(one << e) : rational(bigint(1), one << (-e));
    }

    const bigint& num() const noexcept { return num_; }
    const bigint& den() const noexcept { return den_; }

    int sign() const noexcept { return num_.sign(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_integer() const noexcept { return den_ == 1; }

    rational abs() const { return num_.sign() < 0 ? -*this : *this; }

    rational operator-() const {
        rational r;
        r.num_ = -num_;
        r.den_ = den_;
        return r;
    }

    rational& operator+=(const rational& o) { return *this = *this + o; }
    rational& operator-=(const rational& o) { return *this = *this - o; }
    rational& operator*=(const rational& o) { return *this = *this * o; }
    rational& operator/=(const rational& o) { return *this = *this / o; }

    friend rational operator+(const rational& a, const rational& b) {
        if (a.den_ == b.den_) return rational(a.num_ + b.num_, a.den_);
        return rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend rational operator-(const rational& a, const rational& b) { return a + (-b); }
    friend rational operator*(const rational& a, const rational& b) {
        return rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend rational operator/(const rational& a, const rational& b) {
        if (b.num_.is_zero()) throw std::domain_error("rational: division by zero");
        return rational(a.num_ * b.den_, a.den_ * b.num_);
    }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend std::strong_ordering operator<=>(const rational& a, const rational& b) {
        const bigint lhs = a.num_ * b.den_;
        const bigint rhs = b.num_ * a.den_;
        if (lhs < rhs) return std::strong_ordering::less;
        if (lhs > rhs) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const {
        return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const rational& r) { return os << r.str(); }

    /// Approximate value, for display and search heuristics only.
    long double approx() const {
        return num_.convert_to<long double>() / den_.convert_to<long double>();
    }

private:
    void normalize() {
        if (den_.sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        const bigint g = boost::multiprecision::gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
        if (num_.is_zero()) den_ = 1;
    }

    bigint num_;
    bigint den_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
        s.remove_suffix(1);
    return s;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

// Boost reads a leading 0 as an octal prefix; strip it.
inline bigint decimal_integer(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return bigint{std::string(digits)};
}

}  // namespace detail

inline rational rational::parse(std::string_view text) {
    std::string_view s = detail::trim(text);
    const std::string original(s);
    auto fail = [&]() -> rational { throw parse_error("not a rational number: '" + original + "'"); };
    if (s.empty()) return fail();

    bool negative = false;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    rational value;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto p = detail::trim(s.substr(0, slash));
        const auto q = detail::trim(s.substr(slash + 1));
        if (!detail::all_digits(p) || !detail::all_digits(q)) return fail();
        const bigint den = detail::decimal_integer(q);
        if (den == 0) throw parse_error("zero denominator in '" + original + "'");
        value = rational(detail::decimal_integer(p), den);
    } else {
        std::string_view mantissa = s;
        long long exponent = 0;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            std::string_view exp_text = s.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!detail::all_digits(exp_text) || exp_text.size() > 6) return fail();
            exponent = std::stoll(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
        }
        std::string digits;
        long long scale = 0;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            const auto int_part = mantissa.substr(0, dot);
            const auto frac_part = mantissa.substr(dot + 1);
            if (int_part.empty() && frac_part.empty()) return fail();
            if (!int_part.empty() && !detail::all_digits(int_part)) return fail();
            if (!frac_part.empty() && !detail::all_digits(frac_part)) return fail();
            digits = std::string(int_part) + std::string(frac_part);
            scale = static_cast<long long>(frac_part.size());
        } else {
            if (!detail::all_digits(mantissa)) return fail();
            digits = std::string(mantissa);
        }
        scale -= exponent;
        const bigint n = detail::decimal_integer(digits);
        bigint ten_pow = 1;
        for (long long i = 0; i < (scale < 0 ? -scale : scale); ++i) ten_pow *= 10;
        value = scale >= 0 ? rational(n, ten_pow) : rational(n * ten_pow);
    }
    return negative ? -value : value;
}

}  // namespace signsum
