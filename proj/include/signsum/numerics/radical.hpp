#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "signsum/numerics/convert.hpp"
#include "signsum/numerics/interval.hpp"
#include "signsum/numerics/rational.hpp"

namespace signsum {

/// n = root^2 * rest with rest free of square factors below the trial bound.
struct square_split {
    bigint root;
    bigint rest;
};

/// Trial division up to `trial_bound`, then a perfect-square test on the
/// cofactor. A cofactor with a large repeated prime stays in `rest`; that only
/// costs canonical form, never correctness.
inline square_split split_square(bigint n, unsigned long trial_bound = 1u << 16) {
    if (n <= 0) throw std::domain_error("split_square: non-positive input");
    bigint root = 1;
    bigint rest = 1;
    auto strip = [&](unsigned long p) {
        unsigned count = 0;
        while (n % p == 0) {
            n /= p;
            ++count;
        }
        for (unsigned i = 0; i + 1 < count; i += 2) root *= p;
        if (count % 2 == 1) rest *= p;
    };
    strip(2);
    for (unsigned long p = 3; p <= trial_bound && bigint(p) * p <= n; p += 2) strip(p);
    if (n > 1) {
        const bigint r = boost::multiprecision::sqrt(n);
        if (r * r == n) root *= r;
        else rest *= n;
    }
    return {root, rest};
}

/// Finite sum  sum_k c_k * sqrt(r_k)  with rational c_k and square-free
/// positive integers r_k (r = 1 is the rational part). Covers every weight
/// the weight-file format can express and is closed under the operations
/// the distribution and verifier modules need.
class radical_sum {
public:
    radical_sum() = default;
    radical_sum(rational r) {  // NOLINT(google-explicit-constructor)
        if (!r.is_zero()) terms_.emplace(bigint(1), std::move(r));
    }
    template <std::integral I>
    radical_sum(I n) : radical_sum(rational(n)) {}  // NOLINT(google-explicit-constructor)

    /// coeff * sqrt(radicand) for any positive integer radicand.
    static radical_sum term(const rational& coeff, const bigint& radicand) {
        radical_sum out;
        if (coeff.is_zero()) return out;
        const auto [root, rest] = split_square(radicand);
        out.terms_.emplace(rest, coeff * rational(root));
        return out;
    }

    /// sqrt(r) for r >= 0.
    static radical_sum sqrt_of(const rational& r) {
        if (r.sign() < 0) throw std::domain_error("sqrt of a negative rational");
        if (r.is_zero()) return {};
        // sqrt(p/q) = sqrt(p*q) / q
        return term(rational(bigint(1), r.den()), r.num() * r.den());
    }

    const std::map<bigint, rational>& terms() const noexcept { return terms_; }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_rational() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }
    rational rational_part() const {
        auto it = terms_.find(bigint(1));
        return it == terms_.end() ? rational() : it->second;
    }
    /// The value as a rational; throws if it is irrational.
    rational to_rational() const {
        if (!is_rational()) throw std::domain_error("radical_sum: value is irrational");
        return rational_part();
    }

    /// Radicands other than 1.
    std::set<bigint> radicands() const {
        std::set<bigint> out;
        for (const auto& [r, c] : terms_)
            if (r != 1) out.insert(r);
        return out;
    }

    radical_sum operator-() const {
        radical_sum out = *this;
        for (auto& [r, c] : out.terms_) c = -c;
        return out;
    }
    friend radical_sum operator+(radical_sum a, const radical_sum& b) {
        for (const auto& [r, c] : b.terms_) a.add_term(r, c);
        return a;
    }
    friend radical_sum operator-(const radical_sum& a, const radical_sum& b) { return a + (-b); }
    friend radical_sum operator*(const radical_sum& a, const radical_sum& b) {
        radical_sum out;
        for (const auto& [ra, ca] : a.terms_) {
            for (const auto& [rb, cb] : b.terms_) {
                // sqrt(ra*rb) = g * sqrt((ra/g)*(rb/g)) with g = gcd(ra, rb)
                const bigint g = boost::multiprecision::gcd(ra, rb);
                const bigint rest = (ra / g) * (rb / g);
                const auto split = split_square(rest);
                out.add_term(split.rest, ca * cb * rational(g * split.root));
            }
        }
        return out;
    }
    friend radical_sum operator*(const radical_sum& a, const rational& s) { return a * radical_sum(s); }

    friend bool operator==(const radical_sum&, const radical_sum&) = default;

    /// Exact sign when at most one radicand other than 1 occurs.
    std::optional<int> exact_sign() const {
        if (terms_.empty()) return 0;
        if (radicands().size() > 1) return std::nullopt;
        const rational a = rational_part();
        rational b;
        bigint s = 1;
        for (const auto& [r, c] : terms_)
            if (r != 1) {
                s = r;
                b = c;
            }
        const int sa = a.sign();
        const int sb = b.sign();
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        // opposite signs: compare a^2 with b^2 s
        const rational a2 = a * a;
        const rational b2s = b * b * rational(s);
        if (a2 == b2s) return 0;
        return a2 > b2s ? sa : sb;
    }

    template <class T = long double>
    interval<T> enclosure() const {
        interval<T> acc(T(0));
        for (const auto& [r, c] : terms_) {
            const interval<T> coeff = enclose<T>(c);
            acc += r == 1 ? coeff : coeff * sqrt(enclose<T>(rational(r)));
        }
        return acc;
    }

    /// "3/5", "1/2*sqrt(2)", "1 - sqrt(3)".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [r, c] : terms_) {
            rational mag = c.abs();
            if (first) out += c.sign() < 0 ? "-" : "";
            else out += c.sign() < 0 ? " - " : " + ";
            first = false;
            if (r == 1) out += mag.str();
            else if (mag == rational(1)) out += "sqrt(" + r.str() + ")";
            else out += mag.str() + "*sqrt(" + r.str() + ")";
        }
        return out;
    }

private:
    void add_term(const bigint& r, const rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(r, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    std::map<bigint, rational> terms_;
};

}  // namespace signsum
