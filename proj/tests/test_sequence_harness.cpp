#include "shiftsolve/builtins.hpp"
#include "shiftsolve/errors.hpp"
#include "shiftsolve/linear_solver.hpp"
#include "shiftsolve/sequence_harness.hpp"
#include "shiftsolve/spectral.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/erf.hpp>

#include <numbers>

using namespace shiftsolve;

namespace {

const double kPi = std::numbers::pi;

std::string failed_checks(const ConvergenceTable& table) {
    std::string out;
    for (const auto& c : table.checks)
        if (!c.passed) out += c.name + " (worst " + std::to_string(c.worst) + ") ";
    return out;
}

}  // namespace

TEST(SmoothCutoff, Shape) {
    EXPECT_EQ(smooth_cutoff(0.0, 3.0), 1.0);
    EXPECT_EQ(smooth_cutoff(3.0, 3.0), 1.0);
    EXPECT_EQ(smooth_cutoff(-3.0, 3.0), 1.0);
    EXPECT_EQ(smooth_cutoff(4.0, 3.0), 0.0);
    EXPECT_EQ(smooth_cutoff(-7.0, 3.0), 0.0);
    EXPECT_NEAR(smooth_cutoff(3.5, 3.0), 0.5, 1e-15);
    double previous = 1.0;
    for (double x = 3.0; x <= 4.0; x += 0.01) {
        const double v = smooth_cutoff(x, 3.0);
        EXPECT_LE(v, previous);
        previous = v;
    }
}

TEST(BuiltinSequence, ScaleAndAlternateGaps) {
    const Grid g = make_grid(40.0, 1024);
    const ShiftParams params(1.0, 1.0);
    const GridFunction f = builtin_function("gaussian", {}, g);
    const SequenceSpec scale = builtin_sequence("scale", SequenceKind::RhsSequence, f, params, 5);
    const SequenceSpec alternate = builtin_sequence("alternate", SequenceKind::RhsSequence, f, params, 5);
    for (int m = 1; m <= 5; ++m) {
        EXPECT_NEAR(l2_norm(scale.generator(m) - f), l2_norm(f) / m, 1e-14);
        EXPECT_NEAR(l2_norm(alternate.generator(m) - f), l2_norm(f) / (2 * m), 1e-14);
    }
    EXPECT_THROW(builtin_sequence("nope", SequenceKind::RhsSequence, f, params), std::invalid_argument);
    EXPECT_THROW(builtin_sequence("add", SequenceKind::RhsSequence, f, params), std::invalid_argument);
}

TEST(BuiltinSequence, TruncationTailBound) {
    // ||G chi_m - G||_1 <= int_{|x|>m} e^{-x^2} = sqrt(pi) erfc(m)
    const Grid g = make_grid(40.0, 4096);
    const GridFunction G = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
    const SequenceSpec spec = builtin_sequence("truncate", SequenceKind::KernelSequence, G, ShiftParams(1.0, 1.0), 4);
    for (int m = 1; m <= 4; ++m)
        EXPECT_LE(l1_norm(spec.generator(m) - G), std::sqrt(kPi) * boost::math::erfc(static_cast<double>(m)) + 1e-15);
}

TEST(LinearSequence, NonResonantScale) {
    const Grid g = make_grid(40.0, 4096);
    const ShiftParams params(1.0, 1.0);
    const GridFunction f = builtin_function("gaussian", {}, g);
    const auto table = run_linear_sequence(builtin_sequence("scale", SequenceKind::RhsSequence, f, params, 12), params);
    ASSERT_EQ(table.rows.size(), 12u);
    EXPECT_TRUE(table.all_passed()) << failed_checks(table);
    for (std::size_t i = 1; i < table.rows.size(); ++i)
        EXPECT_LT(table.rows[i].solution_gap_h2, table.rows[i - 1].solution_gap_h2);
    EXPECT_EQ(table.rows.front().solution_gap_h2 > 0.0, true);
}

TEST(LinearSequence, ResonantProjectedMembers) {
    const Grid g = make_grid(40.0, 4096);
    const ShiftParams params(1.0, 2 * kPi);
    const GridFunction f = builtin_function("hermite_gaussian", {}, g);
    const GridFunction bump = builtin_function("gaussian", {{"center", 1.0}}, g);
    const auto table = run_linear_sequence(builtin_sequence("add", SequenceKind::RhsSequence, f, params, 10, bump), params);
    EXPECT_TRUE(table.cls.resonant());
    EXPECT_TRUE(table.all_passed()) << failed_checks(table);
    EXPECT_LT(table.rows.back().weighted_gap, table.rows.front().weighted_gap / 5);
}

TEST(LinearSequence, ResonantInvalidMemberIsReported) {
    const Grid g = make_grid(40.0, 1024);
    const ShiftParams params(1.0, 2 * kPi);
    const GridFunction f = builtin_function("gaussian", {}, g);
    try {
        run_linear_sequence(builtin_sequence("scale", SequenceKind::RhsSequence, f, params, 3), params);
        FAIL() << "expected SequenceMemberInvalid";
    } catch (const SequenceMemberInvalid& e) {
        EXPECT_EQ(e.member, 2);  // m = 1 is the zero function
    }
}

TEST(KernelSequence, TruncatedKernels) {
    const Grid g = make_grid(40.0, 2048);
    const ShiftParams params(1.0, 1.0);
    const GridFunction G = builtin_function("gaussian", {{"amplitude", 0.3}}, g);
    const Nonlinearity F = builtin_nonlinearity("tanh_source", {}, 0.1, 0.1);
    const auto table = run_kernel_sequence(builtin_sequence("truncate", SequenceKind::KernelSequence, G, params, 6), F, params);
    EXPECT_TRUE(table.all_passed()) << failed_checks(table);
    EXPECT_NEAR(table.N_limit, 0.3426308731849, 1e-8);
    EXPECT_LT(table.rows.back().multiplier_gap, 1e-8);
}

TEST(KernelSequence, UniformMarginViolation) {
    const Grid g = make_grid(40.0, 1024);
    const ShiftParams params(1.0, 1.0);
    const GridFunction G = builtin_function("gaussian", {{"amplitude", 0.3}}, g);
    const Nonlinearity F = builtin_nonlinearity("tanh_source", {}, 0.1, 0.1);
    // q is about 0.12, so 1 - epsilon = 0.05 fails already for m = 1.
    const SequenceSpec spec = builtin_sequence("alternate", SequenceKind::KernelSequence, G, params, 4, std::nullopt, 0.95);
    EXPECT_THROW(run_kernel_sequence(spec, F, params), SequenceMemberInvalid);
}

TEST(KernelSequence, WrongKindIsRejected) {
    const Grid g = make_grid(40.0, 1024);
    const ShiftParams params(1.0, 1.0);
    const GridFunction G = builtin_function("gaussian", {}, g);
    const SequenceSpec rhs = builtin_sequence("scale", SequenceKind::RhsSequence, G, params, 2);
    EXPECT_THROW(run_kernel_sequence(rhs, builtin_nonlinearity("zero", {}, 0, 0), params), std::invalid_argument);
}
