#include <gtest/gtest.h>

#include <cmath>

#include "oracle_values.hpp"
#include "signsum/gaussian.hpp"

using namespace signsum;
using iv = interval<long double>;
namespace g = signsum::gaussian;

namespace {

// oracle values are rounded to long double, so allow that rounding
::testing::AssertionResult encloses(const iv& x, long double oracle) {
    const long double slack = std::fabs(oracle) * 0x1p-62L;
    if (x.lo() - slack <= oracle && oracle <= x.hi() + slack) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << x << " does not contain " << oracle;
}

iv point(long double x) { return iv(x); }

}  // namespace

TEST(QTail, OracleValues) {
    EXPECT_TRUE(encloses(g::q_tail(point(0)), kQ0));
    EXPECT_TRUE(encloses(g::q_tail(g::sqrt2<long double>()), kQSqrt2));
    EXPECT_TRUE(encloses(g::q_tail(point(1)), kQ1));
    EXPECT_TRUE(encloses(g::q_tail(point(2)), kQ2));
    EXPECT_TRUE(encloses(g::q_tail(point(3)), kQ3));
    EXPECT_TRUE(encloses(g::q_tail(point(5)), kQ5));
    EXPECT_TRUE(encloses(g::q_tail(point(10)), kQ10));
    EXPECT_TRUE(encloses(g::q_tail(point(-1.5L)), kQMinus1_5));
}

TEST(QTail, WidthMeetsTarget) {
    for (long double x : {0.1L, 1.0L, 2.9L, 3.1L, 6.0L, 30.0L}) {
        const iv q = g::q_tail(point(x), 1e-15L);
        EXPECT_LE(q.width(), 1e-15L) << x;
    }
}

TEST(QTail, AgreesWithOracleGrid) {
    for (int k = 0; k < 1000; ++k) {
        const rational x = rational(-10) + rational(20 * k, 999);
        const iv q = g::q_tail(enclose(x));
        ASSERT_TRUE(encloses(q, kQGrid[k])) << "k=" << k;
        ASSERT_LE(q.width(), 1e-12L) << "k=" << k;
    }
}

TEST(QTail, DecreasingAndSymmetric) {
    iv prev = g::q_tail(point(-8));
    for (int k = -79; k <= 80; ++k) {
        const long double x = k / 10.0L;
        const iv q = g::q_tail(point(x));
        EXPECT_LE(q.hi(), prev.hi());
        const iv mirror = g::q_tail(point(-x));
        EXPECT_TRUE((q + mirror).contains(1.0L)) << x;
        prev = q;
    }
}

TEST(QTail, RejectsBadInput) {
    EXPECT_THROW(g::q_tail(point(1), 0.0L), contract_error);
    EXPECT_THROW(g::q_tail(point(NAN)), contract_error);
    EXPECT_THROW(g::q_tail(point(1), 1e-300L), precision_exhausted);
}

TEST(Bound, OracleValuesAndEqualityPoint) {
    EXPECT_TRUE(encloses(g::bd_bound(point(2)), kBd2));
    EXPECT_TRUE(encloses(g::bd_bound(point(1)), kBd1));
    EXPECT_TRUE(encloses(g::bd_bound(point(0)), kBd0));
    EXPECT_TRUE(encloses(g::bd_bound(enclose(rational(7, 5))), kBd1_4));
    const iv at_sqrt2 = g::bd_bound(g::sqrt2<long double>());
    EXPECT_TRUE(at_sqrt2.contains(0.25L));
    EXPECT_LE(at_sqrt2.width(), 1e-12L);
}

TEST(FOfC, OracleValues) {
    const iv quarter = g::f_of_c<long double>(rational(1, 4));
    EXPECT_TRUE(encloses(quarter, kFQuarter));
    EXPECT_GT(to_rational(quarter.lo()), rational(427685, 1000000));
    EXPECT_LE(quarter.width(), 1e-9L);
    EXPECT_TRUE(encloses(g::f_of_c<long double>(rational(1)), kFOne));
    EXPECT_TRUE(encloses(g::f_of_c<long double>(rational(1, 5)), kF0_2));
    EXPECT_TRUE(encloses(g::f_of_c<long double>(rational(7, 25)), kF7_25));
}

TEST(FOfC, BoundedByHalfAndDecreasing) {
    iv prev = g::f_of_c<long double>(rational(1, 1000));
    EXPECT_LE(prev.hi(), 0.5L);
    for (int k = 2; k <= 100; ++k) {
        const iv f = g::f_of_c<long double>(rational(k * 10, 1000));
        EXPECT_LE(f.hi(), 0.5L);
        EXPECT_LE(f.lo(), prev.hi());
        prev = f;
    }
    EXPECT_THROW(g::f_of_c<long double>(rational(0)), contract_error);
    EXPECT_THROW(g::f_of_c(iv(-1, 1)), contract_error);
}

TEST(FOfC, IntervalArgumentCoversEndpoints) {
    const iv wide = g::f_of_c(iv(0.2L, 0.28L));
    EXPECT_TRUE(encloses(wide, kF0_2));
    EXPECT_TRUE(encloses(wide, kF0_28));
}

TEST(Identity, SecondDerivative) {
    EXPECT_EQ(g::q_second_derivative_identity_check(iv(0.5L, 4.0L)), verdict::verified);
    EXPECT_THROW(g::q_second_derivative_identity_check(iv(-1.0L, 1.0L)), contract_error);
}
