#pragma once

#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "signsum/errors.hpp"
#include "signsum/numerics/convert.hpp"
#include "signsum/numerics/interval.hpp"
#include "signsum/numerics/radical.hpp"
#include "signsum/numerics/rational.hpp"

namespace signsum {

using real_interval = interval<long double>;

/// A real number known either exactly (as a sum of rational multiples of
/// square roots) or only through an enclosure. The enclosure is always present.
class real_value {
public:
    real_value() : exact_(radical_sum()), enclosure_(0.0L) {}
    real_value(const rational& r) : exact_(radical_sum(r)), enclosure_(enclose(r)) {}  // NOLINT
    template <std::integral I>
    real_value(I n) : real_value(rational(n)) {}  // NOLINT
    real_value(radical_sum s) : exact_(std::move(s)), enclosure_(exact_->enclosure()) {}  // NOLINT
    explicit real_value(const real_interval& enc) : enclosure_(enc) {}

    /// "p/q", a finite decimal, "sqrt(p/q)" or "-sqrt(p/q)".
    static real_value parse(std::string_view text) {
        std::string_view s = detail::trim(text);
        bool negative = false;
        std::string_view body = s;
        if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
            negative = body.front() == '-';
            body.remove_prefix(1);
            body = detail::trim(body);
        }
        if (body.substr(0, 4) == "sqrt") {
            std::string_view inner = detail::trim(body.substr(4));
            if (inner.size() < 2 || inner.front() != '(' || inner.back() != ')')
                throw parse_error("malformed sqrt expression: '" + std::string(s) + "'");
            inner = inner.substr(1, inner.size() - 2);
            const rational r = rational::parse(inner);
            if (r.sign() < 0) throw parse_error("sqrt of a negative number: '" + std::string(s) + "'");
            const radical_sum root = radical_sum::sqrt_of(r);
            return real_value(negative ? -root : root);
        }
        return real_value(rational::parse(s));
    }

    bool is_exact() const noexcept { return exact_.has_value(); }
    bool is_rational() const noexcept { return exact_ && exact_->is_rational(); }
    const std::optional<radical_sum>& exact() const noexcept { return exact_; }
    const real_interval& enclosure() const noexcept { return enclosure_; }
    rational to_rational() const {
        if (!is_rational()) throw std::domain_error("real_value: not rational");
        return exact_->rational_part();
    }

    real_value operator-() const {
        real_value out(-enclosure_);
        if (exact_) out.exact_ = -*exact_;
        return out;
    }
    friend real_value operator+(const real_value& a, const real_value& b) {
        if (a.exact_ && b.exact_) return real_value(*a.exact_ + *b.exact_);
        return real_value(a.enclosure_ + b.enclosure_);
    }
    friend real_value operator-(const real_value& a, const real_value& b) { return a + (-b); }
    friend real_value operator*(const real_value& a, const real_value& b) {
        if (a.exact_ && b.exact_) return real_value(*a.exact_ * *b.exact_);
        return real_value(a.enclosure_ * b.enclosure_);
    }

    std::string str() const {
        if (exact_) return exact_->str();
        std::ostringstream os;
        os.precision(21);
        os << enclosure_;
        return os.str();
    }

private:
    std::optional<radical_sum> exact_;
    real_interval enclosure_;
};

enum class weight_mode { exact, interval };

inline std::string_view to_string(weight_mode m) { return m == weight_mode::exact ? "exact" : "interval"; }

enum class norm_status { certified, violated, undecided };

/// The weights (v_1, ..., v_n) of a signed sum.
///
/// Mode is exact when every entry is rational; any square-root or
/// enclosure-only entry puts the vector in interval mode.
class weight_vector {
public:
    weight_vector() = default;
    explicit weight_vector(std::vector<real_value> entries) : entries_(std::move(entries)) {}
    weight_vector(std::initializer_list<rational> entries) {
        for (const auto& r : entries) entries_.emplace_back(r);
    }

    static weight_vector from_rationals(const std::vector<rational>& values) {
        weight_vector out;
        for (const auto& r : values) out.entries_.emplace_back(r);
        return out;
    }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<real_value>& entries() const noexcept { return entries_; }
    const real_value& operator[](std::size_t i) const { return entries_[i]; }

    weight_mode mode() const {
        for (const auto& e : entries_)
            if (!e.is_rational()) return weight_mode::interval;
        return weight_mode::exact;
    }

    bool all_exact() const {
        for (const auto& e : entries_)
            if (!e.is_exact()) return false;
        return true;
    }

    std::vector<rational> rationals() const {
        std::vector<rational> out;
        for (const auto& e : entries_) out.push_back(e.to_rational());
        return out;
    }

    /// Sum of squares when it is exactly known and rational.
    std::optional<rational> exact_sum_of_squares() const {
        radical_sum acc;
        for (const auto& e : entries_) {
            if (!e.is_exact()) return std::nullopt;
            acc = acc + *e.exact() * *e.exact();
        }
        if (!acc.is_rational()) return std::nullopt;
        return acc.rational_part();
    }

    real_interval sum_of_squares_enclosure() const {
        real_interval acc(0.0L);
        for (const auto& e : entries_) acc += square(e.enclosure());
        return acc;
    }

    /// Whether sum v_i^2 <= bound.
    norm_status check_norm(const rational& bound) const {
        if (auto s = exact_sum_of_squares()) return *s <= bound ? norm_status::certified : norm_status::violated;
        const real_interval s = sum_of_squares_enclosure();
        const real_interval b = enclose(bound);
        if (s.hi() <= b.lo()) return norm_status::certified;
        if (s.lo() > b.hi()) return norm_status::violated;
        return norm_status::undecided;
    }

    std::string str() const {
        std::string out = "(";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            if (i) out += ", ";
            out += entries_[i].str();
        }
        return out + ")";
    }

private:
    std::vector<real_value> entries_;
};

}  // namespace signsum
