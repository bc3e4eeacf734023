#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "signsum/verifier/stress.hpp"
#include "signsum/verifier/verifier.hpp"

namespace signsum {

struct battery_config {
    long double precision = gaussian::default_target_width;
    std::uint64_t seed = 20240611;
    std::size_t stress_count = 500;
    int k_max = 60;
};

namespace detail {

inline void absorb(verification_report& into, verification_report&& part) {
    for (auto& e : part.records) into.add(std::move(e));
    for (auto& c : part.components) into.add(std::move(c));
}

// Claim and verdict only, for reports referenced from more than one place.
inline verification_report summary_of(const verification_report& r) {
    verification_report out{r.claim, r.result, r.precision, {}, {}};
    return out;
}

inline weight_vector parse_weights(std::initializer_list<const char*> items) {
    std::vector<real_value> out;
    for (const char* s : items) out.push_back(real_value::parse(s));
    return weight_vector(std::move(out));
}

}  // namespace detail

/// (1), (1/sqrt2, 1/sqrt2), (1/sqrt3 x3), (1/2 x4), (3/5, 4/5).
inline std::vector<weight_vector> named_main_vectors() {
    return {detail::parse_weights({"1"}), detail::parse_weights({"sqrt(1/2)", "sqrt(1/2)"}),
            detail::parse_weights({"sqrt(1/3)", "sqrt(1/3)", "sqrt(1/3)"}),
            detail::parse_weights({"1/2", "1/2", "1/2", "1/2"}), detail::parse_weights({"3/5", "4/5"})};
}

inline std::vector<rational> default_f_grid() {
    return {rational(1, 100), rational(1, 10), rational(1, 5), rational(1, 4), rational(7, 25), rational(1, 2),
            rational(1)};
}

/// k/100 for k = 1..28.
inline std::vector<rational> default_concavity_grid() {
    std::vector<rational> out;
    for (int k = 1; k <= 28; ++k) out.emplace_back(bigint(k), bigint(100));
    return out;
}

/// k/1000 for k = 0..111, then 1/25 and 1/9.
inline std::vector<rational> default_xi_values() {
    std::vector<rational> out;
    for (int k = 0; k <= 111; ++k) out.emplace_back(bigint(k), bigint(1000));
    out.emplace_back(1, 25);
    out.emplace_back(1, 9);
    return out;
}

inline verification_report verify_xi_grid(const std::vector<rational>& values,
                                          long double target = gaussian::default_target_width) {
    verification_report r{"xi-grid", verdict::verified, target, {}, {}};
    auto parts = parallel_map(values.size(), [&](std::size_t i) { return verify_xi_inequality(values[i], target); });
    for (auto& p : parts) detail::absorb(r, std::move(p));
    return r;
}

/// Named vectors followed by `count` random unit-ball vectors.
inline verification_report verify_main_suite(std::size_t count, std::uint64_t seed) {
    verification_report r{"main-instances", verdict::verified, 0, {}, {}};
    for (const auto& v : named_main_vectors()) detail::absorb(r, verify_main_conclusion(v));
    auto parts = parallel_map(count, [&](std::size_t i) {
        auto g = stress::make_engine(seed, i);
        return verify_main_conclusion(stress::random_unit_vector(g));
    });
    for (auto& p : parts) detail::absorb(r, std::move(p));
    return r;
}

/// Fixed examples followed by `count` random (v, c, x).
inline verification_report verify_lemma1_suite(std::size_t count, std::uint64_t seed,
                                               long double target = gaussian::default_target_width) {
    verification_report r{"lemma1-stress", verdict::verified, target, {}, {}};
    detail::absorb(r, verify_lemma1_on_instance(weight_vector{0, 0, 0}, rational(1, 2), rational(1, 3), target));
    detail::absorb(r, verify_lemma1_on_instance(weight_vector{rational(1, 2), rational(1, 2), rational(1, 2),
                                                              rational(1, 2)},
                                                rational(1, 4), rational(1), target));
    detail::absorb(r,
                   verify_lemma1_on_instance(weight_vector{rational(3, 5), rational(4, 5)}, rational(1, 4),
                                             rational(1), target));
    auto parts = parallel_map(count, [&](std::size_t i) {
        auto g = stress::make_engine(seed ^ 0x1e77a1ULL, i);
        const stress::lemma1_case k = stress::random_lemma1_case(g);
        return verify_lemma1_on_instance(k.v, k.c, k.x, target);
    });
    for (auto& p : parts) detail::absorb(r, std::move(p));
    return r;
}

/// The equality case at sqrt 2, then `count` random instances.
inline verification_report verify_bd_suite(std::size_t count, std::uint64_t seed,
                                           long double target = gaussian::default_target_width) {
    verification_report r{"bd-stress", verdict::verified, target, {}, {}};
    r.add(detail::with_retries("x=sqrt(2)", "bd(x) contains 1/4", target, [&](long double w) {
        evidence e;
        e.lhs = gaussian::bd_bound(gaussian::sqrt2<long double>(), w);
        e.rhs = real_interval(0.25L);
        e.outcome = !e.lhs->contains(0.25L)     ? verdict::refuted
                    : e.lhs->width() <= target ? verdict::verified
                                               : verdict::undecided;
        return e;
    }));
    detail::absorb(r, verify_bd_on_instance(detail::parse_weights({"sqrt(1/2)", "sqrt(1/2)"}),
                                            real_value::parse("sqrt(2)"), target));
    auto parts = parallel_map(count, [&](std::size_t i) {
        auto g = stress::make_engine(seed ^ 0xbdbdULL, i);
        const stress::bd_case k = stress::random_bd_case(g);
        return verify_bd_on_instance(k.v, real_value(k.x), target);
    });
    for (auto& p : parts) detail::absorb(r, std::move(p));
    return r;
}

/// Bound, monotonicity and concavity of F, with the two lemma reports attached
/// as summaries.
inline verification_report verify_f_properties_with(const verification_report& lemma1,
                                                    const verification_report& lemma2, long double w) {
    return verify_f_properties(default_f_grid(),
                               {detail::summary_of(lemma1), detail::summary_of(lemma2),
                                verify_f_concavity(default_concavity_grid(), 1e-12L, w)},
                               w);
}

/// Every check in one report; verified only when every component is.
inline verification_report report_all(const battery_config& cfg = {}) {
    const long double w = cfg.precision;
    verification_report r{"report", verdict::verified, w, {}, {}};
    r.add(verify_main_constant(w));
    verification_report lemma1 = verify_lemma1_suite(cfg.stress_count, cfg.seed, w);
    verification_report lemma2 = verify_lemma2_finite(cfg.k_max, w);
    r.add(verify_f_properties_with(lemma1, lemma2, w));
    r.add(std::move(lemma2));
    r.add(verify_xi_grid(default_xi_values(), w));
    r.add(verify_convexity_q_invsqrt(default_convexity_grid()));
    r.add(verify_bd_suite(cfg.stress_count, cfg.seed, w));
    r.add(std::move(lemma1));
    r.add(verify_main_suite(cfg.stress_count, cfg.seed));
    return r;
}

}  // namespace signsum
