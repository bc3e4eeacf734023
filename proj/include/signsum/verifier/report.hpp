#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "signsum/distribution/weights.hpp"
#include "signsum/numerics/convert.hpp"
#include "signsum/verdict.hpp"

namespace signsum {

/// One recorded comparison "lhs relation rhs".
struct evidence {
    std::string input;
    std::string relation;
    std::optional<real_interval> lhs;
    std::optional<real_interval> rhs;
    std::optional<rational> exact;  // exact value of lhs when it is known
    verdict outcome = verdict::undecided;
    std::string note;
};

struct verification_report {
    std::string claim;
    verdict result = verdict::verified;
    long double precision = 0;  // requested enclosure width
    std::vector<evidence> records;
    std::vector<verification_report> components;

    void add(evidence e) {
        result = combine(result, e.outcome);
        records.push_back(std::move(e));
    }
    void add(verification_report r) {
        result = combine(result, r.result);
        components.push_back(std::move(r));
    }

    std::size_t count(verdict v) const {
        std::size_t n = 0;
        for (const auto& e : records) n += e.outcome == v;
        return n;
    }
};

namespace detail {

// certified a >= b, i.e. a.lo >= b.hi
inline verdict compare_ge(const real_interval& a, const real_interval& b) {
    if (a.lo() >= b.hi()) return verdict::verified;
    if (a.hi() < b.lo()) return verdict::refuted;
    return verdict::undecided;
}

inline verdict compare_gt(const real_interval& a, const real_interval& b) {
    if (a.lo() > b.hi()) return verdict::verified;
    if (a.hi() <= b.lo()) return verdict::refuted;
    return verdict::undecided;
}

// Probability bounds [lower, upper] (exact rationals) against a float bound.
inline verdict compare_le(const rational& lower, const rational& upper, const real_interval& bound) {
    if (upper <= to_rational(bound.hi())) return verdict::verified;
    if (lower > to_rational(bound.hi())) return verdict::refuted;
    return verdict::undecided;
}

inline verdict compare_ge(const rational& lower, const rational& upper, const real_interval& bound) {
    if (lower >= to_rational(bound.hi())) return verdict::verified;
    if (upper < to_rational(bound.lo())) return verdict::refuted;
    return verdict::undecided;
}

}  // namespace detail

}  // namespace signsum
