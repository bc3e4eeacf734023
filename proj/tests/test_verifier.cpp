#include <gtest/gtest.h>

#include "signsum/verifier/battery.hpp"

using namespace signsum;

namespace {

weight_vector parse(std::initializer_list<const char*> items) {
    std::vector<real_value> out;
    for (const char* s : items) out.push_back(real_value::parse(s));
    return weight_vector(std::move(out));
}

void expect_verdict_in_all(const verification_report& r, bool allow_undecided) {
    for (const auto& e : r.records) {
        if (allow_undecided) EXPECT_NE(e.outcome, verdict::refuted) << e.input;
        else EXPECT_EQ(e.outcome, verdict::verified) << e.input << " " << e.note;
    }
    for (const auto& c : r.components) expect_verdict_in_all(c, allow_undecided);
}

}  // namespace

TEST(Bd, EqualityCaseAtSqrt2) {
    const auto r = verify_bd_on_instance(parse({"sqrt(1/2)", "sqrt(1/2)"}), real_value::parse("sqrt(2)"));
    EXPECT_EQ(r.result, verdict::verified);
    ASSERT_EQ(r.records.size(), 1u);
    EXPECT_EQ(*r.records[0].exact, rational(1, 4));
    EXPECT_TRUE(r.records[0].rhs->contains(0.25L));
}

TEST(Bd, SpecInstances) {
    EXPECT_EQ(verify_bd_on_instance(weight_vector{rational(3, 5), rational(4, 5)}, real_value(1)).result,
              verdict::verified);
    EXPECT_EQ(verify_bd_on_instance(weight_vector{rational(1)}, real_value(0)).result, verdict::verified);
    EXPECT_THROW(verify_bd_on_instance(weight_vector{rational(1), rational(1)}, real_value(0)), contract_error);
}

TEST(Lemma1, SpecInstances) {
    EXPECT_EQ(verify_lemma1_on_instance(weight_vector{0, 0}, rational(1, 2), rational(1, 2)).result,
              verdict::verified);
    const auto halves = verify_lemma1_on_instance(parse({"1/2", "1/2", "1/2", "1/2"}), rational(1, 4), rational(1));
    EXPECT_EQ(halves.result, verdict::verified);
    EXPECT_EQ(*halves.records[0].exact, rational(11, 16));
    const auto pyth = verify_lemma1_on_instance(weight_vector{rational(3, 5), rational(4, 5)}, rational(1, 4),
                                                rational(1));
    EXPECT_EQ(pyth.result, verdict::verified);
    EXPECT_EQ(*pyth.records[0].exact, rational(1, 2));
}

TEST(Lemma1, Preconditions) {
    EXPECT_THROW(verify_lemma1_on_instance(weight_vector{rational(1)}, rational(1, 4), rational(0)), contract_error);
    EXPECT_THROW(verify_lemma1_on_instance(weight_vector{rational(1)}, rational(1), rational(3, 2)), contract_error);
    EXPECT_THROW(verify_lemma1_on_instance(weight_vector{rational(1)}, rational(0), rational(0)), contract_error);
}

TEST(Lemma2, InstanceIdentities) {
    const auto k2 = lemma_two_instance::make(2);
    EXPECT_EQ(k2.c1, rational(7, 25));
    EXPECT_EQ(k2.c2, rational(1, 5));
    EXPECT_EQ(k2.weight, rational(1, 2));
    for (int K = 2; K <= 200; ++K) {
        const auto inst = lemma_two_instance::make(K);
        EXPECT_TRUE(inst.c1_identity()) << K;
        EXPECT_TRUE(inst.c2_identity()) << K;
        EXPECT_GT(inst.c1, rational(1, 4));
        EXPECT_LT(inst.c2, rational(1, 4));
        EXPECT_GT(inst.c2, rational(0));
    }
    EXPECT_THROW(lemma_two_instance::make(1), contract_error);
}

TEST(Lemma2, FiniteUpToSixty) {
    const auto r = verify_lemma2_finite(60);
    EXPECT_EQ(r.result, verdict::verified);
    EXPECT_EQ(r.records.size(), 3u * 59u);
    // K = 2: about 0.43315 against 0.427686
    const auto& k2 = r.records[2];
    EXPECT_NEAR(static_cast<double>(k2.lhs->mid()), 0.43315, 5e-5);
    EXPECT_THROW(verify_lemma2_finite(1), contract_error);
}

TEST(Xi, EndpointsAndZero) {
    const auto zero = verify_xi_inequality(rational(0));
    EXPECT_EQ(zero.result, verdict::verified);
    EXPECT_EQ(zero.records[0].relation, "identical");
    EXPECT_EQ(verify_xi_inequality(rational(1, 25)).result, verdict::verified);
    EXPECT_EQ(verify_xi_inequality(rational(1, 9)).result, verdict::verified);
    EXPECT_THROW(verify_xi_inequality(rational(-1, 25)), contract_error);
    EXPECT_THROW(verify_xi_inequality(rational(1, 5)), contract_error);
}

TEST(Xi, GridOverZeroToOneNinth) {
    const auto r = verify_xi_grid(default_xi_values());
    EXPECT_EQ(r.records.size(), 114u);
    expect_verdict_in_all(r, false);
}

TEST(Convexity, Cells) {
    const rational one_tenth(1, 10);
    const auto pos = verify_convexity_q_invsqrt({{one_tenth, one_tenth}});
    EXPECT_EQ(pos.result, verdict::verified);
    EXPECT_GT(pos.records[0].lhs->lo(), 0);
    const auto edge = verify_convexity_q_invsqrt({{rational(1, 3), rational(1, 3)}});
    EXPECT_EQ(edge.result, verdict::verified);
    EXPECT_TRUE(edge.records[0].lhs->contains_zero());
    EXPECT_EQ(verify_convexity_q_invsqrt({{rational(3, 10), rational(33, 100)}}).result, verdict::verified);
    EXPECT_THROW(verify_convexity_q_invsqrt({{rational(0), rational(1, 10)}}), contract_error);
    EXPECT_THROW(verify_convexity_q_invsqrt({{rational(1, 10), rational(1, 2)}}), contract_error);
}

TEST(Convexity, DefaultGridCoversAndVerifies) {
    const auto grid = default_convexity_grid();
    EXPECT_EQ(grid.front().lo, rational(1, 10000));
    EXPECT_EQ(grid.back().hi, rational(1, 3));
    for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_EQ(grid[i].lo, grid[i - 1].hi);
    const auto r = verify_convexity_q_invsqrt(grid);
    EXPECT_EQ(r.result, verdict::verified);
    for (std::size_t i = 0; i + 1 < r.records.size(); ++i) EXPECT_GT(r.records[i].lhs->lo(), 0);
}

TEST(FProperties, GridsAndPairs) {
    EXPECT_EQ(verify_f_properties({rational(1, 4)}).result, verdict::verified);
    const auto pair = verify_f_properties({rational(1, 5), rational(7, 25)});
    EXPECT_EQ(pair.result, verdict::verified);
    EXPECT_EQ(verify_f_properties(default_f_grid()).result, verdict::verified);
    EXPECT_THROW(verify_f_properties({rational(1, 2), rational(1, 4)}), contract_error);
    // c so small that F is 1/2 to working precision: decrease cannot be certified
    const auto flat = verify_f_properties({rational(1, 1000), rational(1, 999)});
    EXPECT_EQ(flat.result, verdict::undecided);
}

TEST(FProperties, DelegatedVerdictsAreFolded) {
    verification_report bad{"x", verdict::undecided, 0, {}, {}};
    EXPECT_EQ(verify_f_properties({rational(1, 4)}, {bad}).result, verdict::undecided);
}

TEST(FConcavity, DefaultGrid) {
    EXPECT_EQ(verify_f_concavity(default_concavity_grid()).result, verdict::verified);
}

TEST(Main, NamedVectors) {
    const rational expected[] = {rational(1), rational(1, 2), rational(3, 4), rational(7, 8), rational(1, 2)};
    const auto named = named_main_vectors();
    for (std::size_t i = 0; i < named.size(); ++i) {
        const auto r = verify_main_conclusion(named[i]);
        EXPECT_EQ(r.result, verdict::verified);
        EXPECT_EQ(*r.records[0].exact, expected[i]);
    }
    EXPECT_THROW(verify_main_conclusion(weight_vector{rational(1), rational(1, 2)}), contract_error);
}

TEST(MainConstant, EnclosureAndThreshold) {
    const auto r = verify_main_constant();
    EXPECT_EQ(r.result, verdict::verified);
    const auto& f = *r.records[0].lhs;
    EXPECT_LE(f.width(), 1e-9L);
    EXPECT_GT(to_rational(f.lo()), main_constant_threshold());
}

TEST(Stress, SuitesNeverRefute) {
    expect_verdict_in_all(verify_lemma1_suite(120, 7), true);
    expect_verdict_in_all(verify_bd_suite(120, 7), false);
    expect_verdict_in_all(verify_main_suite(120, 7), false);
}

TEST(Stress, GeneratorsAreDeterministic) {
    auto g1 = stress::make_engine(5, 17), g2 = stress::make_engine(5, 17);
    const auto a = stress::random_lemma1_case(g1), b = stress::random_lemma1_case(g2);
    EXPECT_EQ(a.c, b.c);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.v.str(), b.v.str());
    // c is in (0, 1] and the budget is met exactly
    const rational shift = rational(1) + a.x.abs();
    EXPECT_EQ(*a.v.exact_sum_of_squares(), a.c * shift * shift);
    EXPECT_GT(a.c, rational(0));
    EXPECT_LE(a.c, rational(1));
}

TEST(Battery, ImpossiblePrecisionIsUndecidedNotRefuted) {
    battery_config cfg;
    cfg.precision = 1e-300L;
    cfg.stress_count = 10;
    cfg.k_max = 4;
    const auto r = report_all(cfg);
    EXPECT_EQ(r.result, verdict::undecided);
    expect_verdict_in_all(r, true);
}

TEST(Battery, DefaultIsVerified) {
    battery_config cfg;
    cfg.stress_count = 50;
    const auto r = report_all(cfg);
    EXPECT_EQ(r.result, verdict::verified);
    EXPECT_EQ(r.components.size(), 8u);
}
