#include "shiftsolve/errors.hpp"
#include "shiftsolve/shift_operator.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

using namespace shiftsolve;

namespace {
const double kPi = std::numbers::pi;
}

TEST(ShiftParams, Validation) {
    EXPECT_THROW(ShiftParams(0.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ShiftParams(-1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(ShiftParams(1.0, 0.0), std::invalid_argument);
    EXPECT_NO_THROW(ShiftParams(1.0, -2.0));
}

TEST(Symbol, KnownValues) {
    const ShiftParams params(1.0, kPi);
    EXPECT_NEAR(std::abs(symbol(1.0, params) - Complex(2.0, 0.0)), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(symbol_modulus_sq(1.0, params), 4.0);
    EXPECT_NEAR(std::abs(symbol(0.0, params) - Complex(-1.0, 0.0)), 0.0, 1e-15);
    // resonant: lambda vanishes at +-sqrt(a)
    const ShiftParams res(4.0, kPi);
    EXPECT_NEAR(std::abs(symbol(2.0, res)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(symbol(-2.0, res)), 0.0, 1e-14);
}

TEST(Symbol, ModulusIdentityRandomized) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> p(-50.0, 50.0), a(0.01, 100.0), h(-20.0, 20.0);
    for (int i = 0; i < 100000; ++i) {
        const ShiftParams params(a(rng), h(rng) + 1e-3);
        const double q = p(rng);
        const double lhs = std::norm(symbol(q, params));
        const double rhs = symbol_modulus_sq(q, params);
        ASSERT_LE(std::abs(lhs - rhs), 1e-12 * std::max(rhs, 1e-300) + 1e-14 * params.a() * params.a());
    }
}

TEST(Classify, ResonantExamples) {
    const auto c = classify(ShiftParams(1.0, 2 * kPi));
    EXPECT_TRUE(c.resonant());
    EXPECT_EQ(c.n, 1);
    EXPECT_FALSE(c.alpha.has_value());
    EXPECT_EQ(classify(ShiftParams(1.0, -4 * kPi)).n, -2);
    EXPECT_EQ(classify(ShiftParams(4.0, kPi)).n, 1);
    EXPECT_EQ(classify(ShiftParams(0.25, 12 * kPi)).n, 3);
}

TEST(Classify, NonResonantCarriesAlpha) {
    const auto c = classify(ShiftParams(1.0, kPi));
    EXPECT_FALSE(c.resonant());
    EXPECT_FALSE(c.n.has_value());
    ASSERT_TRUE(c.alpha.has_value());
    EXPECT_NEAR(*c.alpha, 0.9007388931907, 1e-9);
}

TEST(Classify, ToleranceBehaviour) {
    const ShiftParams near(1.0, 2 * kPi + 1e-6);
    EXPECT_FALSE(classify(near).resonant());
    EXPECT_TRUE(classify(near, 1e-5).resonant());
    EXPECT_THROW(classify(near, kPi), std::invalid_argument);
    EXPECT_THROW(classify(near, 0.0), std::invalid_argument);
}

TEST(Alpha, FrozenOracleValues) {
    // independent dense sampling plus scalar minimization
    EXPECT_NEAR(estimate_alpha(ShiftParams(1.0, kPi)), 0.9007388931907, 1e-9);
    EXPECT_NEAR(estimate_alpha(ShiftParams(1.0, 1.0)), 0.4892579624406, 1e-9);
    EXPECT_NEAR(estimate_alpha(ShiftParams(4.0, 1.0)), 12.611219019502, 1e-8);
    EXPECT_NEAR(estimate_alpha(ShiftParams(0.5, 3.0)), 0.2017242323219, 1e-9);
}

TEST(Alpha, IsALowerBoundOfTheSampledSymbol) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> a(0.1, 10.0), h(0.2, 8.0), p(-30.0, 30.0);
    for (int trial = 0; trial < 40; ++trial) {
        const ShiftParams params(a(rng), h(rng));
        if (classify(params, 1e-3).resonant()) continue;
        const double alpha = estimate_alpha(params);
        EXPECT_GT(alpha, 0.0);
        for (int i = 0; i < 2000; ++i) ASSERT_GE(symbol_modulus_sq(p(rng), params), alpha * (1 - 1e-9));
    }
}

TEST(Alpha, RejectsResonantParameters) {
    EXPECT_THROW(estimate_alpha(ShiftParams(1.0, 2 * kPi)), std::invalid_argument);
}

TEST(Alpha, SearchWindowCoversTail) {
    const ShiftParams params(9.0, 0.7);
    const double P = alpha_search_window(params);
    EXPECT_DOUBLE_EQ(P, 8.0);
    EXPECT_GT(symbol_modulus_sq(P, params), estimate_alpha(params));
}
