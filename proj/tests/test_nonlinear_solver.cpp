#include "shiftsolve/builtins.hpp"
#include "shiftsolve/errors.hpp"
#include "shiftsolve/nonlinear_solver.hpp"
#include "shiftsolve/spectral.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace shiftsolve;

namespace {

const double kPi = std::numbers::pi;

struct Problem {
    Grid grid = make_grid(40.0, 4096);
    ShiftParams params{1.0, 1.0};
    GridFunction G = builtin_function("gaussian", {{"amplitude", 0.3}}, grid);
    Nonlinearity F = builtin_nonlinearity("tanh_source", {}, 0.1, 0.1);
};

}  // namespace

TEST(Convolution, GaussianSelfConvolution) {
    const Grid g = make_grid(40.0, 4096);
    const GridFunction u = builtin_function("gaussian", {}, g);
    const GridFunction expected = GridFunction::sample(g, [](double x) { return std::sqrt(kPi) * std::exp(-x * x / 4); });
    EXPECT_LE((convolve(u, u).values - expected.values).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Convolution, SpectralMatchesDirectSum) {
    std::mt19937_64 rng(51);
    const Grid g = make_grid(20.0, 512);
    for (int trial = 0; trial < 5; ++trial) {
        const GridFunction G = testing_support::random_smooth(g, rng, true);
        const GridFunction w = testing_support::random_smooth(g, rng, true);
        const GridFunction fast = convolve(G, w);
        const GridFunction slow = convolve_direct(G, w);
        EXPECT_LE((fast.values - slow.values).norm(), 1e-12 * slow.values.norm());
    }
}

TEST(Nonlinearity, ComposeAndEnvelope) {
    const Problem pb;
    const GridFunction zero = GridFunction::zero(pb.grid);
    const GridFunction source = GridFunction::sample(pb.grid, [](double x) { return std::exp(-x * x); });
    EXPECT_LE((pb.F.compose(zero).values - source.values).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((pb.F.at_zero(pb.grid).values - source.values).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LE((pb.F.envelope_on(pb.grid).values - source.values).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Nonlinearity, AssumptionCheckDetectsWrongConstants) {
    const Grid g = make_grid(40.0, 1024);
    const auto ok = check_assumptions(builtin_nonlinearity("tanh_source", {}, 0.1, 0.1), g, 5);
    EXPECT_TRUE(ok.growth_ok);
    EXPECT_TRUE(ok.lipschitz_ok);
    EXPECT_LE(ok.worst_lipschitz_ratio, 0.1);
    const auto bad_l = check_assumptions(builtin_nonlinearity("tanh_source", {}, 0.1, 0.05), g, 5);
    EXPECT_FALSE(bad_l.lipschitz_ok);
    const auto bad_k = check_assumptions(builtin_nonlinearity("tanh_source", {}, 0.0, 0.1), g, 5);
    EXPECT_FALSE(bad_k.growth_ok);
}

TEST(ContractionMap, LipschitzBoundOnRandomPairs) {
    const Problem pb;
    const ContractionMap T(pb.G, pb.F, pb.params);
    std::mt19937_64 rng(52);
    for (int trial = 0; trial < 10; ++trial) {
        const GridFunction v1 = 3.0 * testing_support::random_smooth(pb.grid, rng);
        const GridFunction v2 = 3.0 * testing_support::random_smooth(pb.grid, rng);
        EXPECT_LE(h2_norm(T(v1) - T(v2)), T.q() * h2_norm(v1 - v2) * 1.05);
    }
}

TEST(ContractionMap, ApplyTMatchesMap) {
    const Problem pb;
    std::mt19937_64 rng(53);
    const GridFunction v = testing_support::random_smooth(pb.grid, rng);
    const ContractionMap T(pb.G, pb.F, pb.params);
    EXPECT_LE((apply_T(v, pb.G, pb.F, pb.params).values - T(v).values).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(FixedPoint, BuiltinProblemConverges) {
    const Problem pb;
    const auto r = fixed_point_solve(pb.G, pb.F, pb.params);
    EXPECT_NEAR(r.q_bound, 2 * std::sqrt(kPi) * 0.3426308731849 * 0.1, 1e-9);
    EXPECT_LE(r.observed_ratio, r.q_bound * 1.1);
    EXPECT_LE(r.residual_l2, 1e-8);
    EXPECT_LE(r.step_norms.back(), 1e-10);
    EXPECT_EQ(static_cast<int>(r.step_norms.size()), r.iterations);
    EXPECT_LE(r.iterations, r.a_priori_iterations);
    EXPECT_TRUE(r.nontrivial);
}

TEST(FixedPoint, IndependentOfStart) {
    const Problem pb;
    std::mt19937_64 rng(54);
    FixedPointOptions opts;
    opts.v0 = 5.0 * testing_support::random_smooth(pb.grid, rng);
    const auto from_zero = fixed_point_solve(pb.G, pb.F, pb.params);
    const auto from_random = fixed_point_solve(pb.G, pb.F, pb.params, opts);
    EXPECT_LE(h2_norm(from_zero.u - from_random.u), 2 * opts.tol_h2);
}

TEST(FixedPoint, RefusesWithoutContraction) {
    const Problem pb;
    const Nonlinearity strong = builtin_nonlinearity("tanh_source", {{"coeff", 3.0}}, 3.0, 3.0);
    try {
        fixed_point_solve(pb.G, strong, pb.params);
        FAIL() << "expected ContractionHypothesisFailed";
    } catch (const ContractionHypothesisFailed& e) {
        EXPECT_GE(e.q, 1.0);
    }
}

TEST(FixedPoint, ResonantNonOrthogonalKernelIsNotFinite) {
    const Problem pb;
    EXPECT_THROW(fixed_point_solve(pb.G, pb.F, ShiftParams(1.0, 2 * kPi)), NotFinite);
}

TEST(FixedPoint, ResonantOrthogonalKernelConverges) {
    const Problem pb;
    const GridFunction G = builtin_function("hermite_gaussian", {{"amplitude", 0.1}}, pb.grid);
    const auto r = fixed_point_solve(G, pb.F, ShiftParams(1.0, 2 * kPi));
    EXPECT_LT(r.q_bound, 1.0);
    EXPECT_LE(r.residual_l2, 1e-8);
}

TEST(FixedPoint, MaxIterations) {
    const Problem pb;
    FixedPointOptions opts;
    opts.max_iter = 2;
    EXPECT_THROW(fixed_point_solve(pb.G, pb.F, pb.params, opts), MaxIterExceeded);
}

TEST(Nontriviality, TrivialWithoutSource) {
    const Problem pb;
    const Nonlinearity F = builtin_nonlinearity("tanh", {}, 0.1, 0.1);
    const auto r = fixed_point_solve(pb.G, F, pb.params);
    EXPECT_LE(h2_norm(r.u), 1e-10);
    EXPECT_FALSE(r.nontrivial);
    EXPECT_FALSE(nontriviality_check(pb.G, F, pb.grid).nontrivial);
}

TEST(Nontriviality, GaussianOverlap) {
    const Problem pb;
    const auto check = nontriviality_check(pb.G, pb.F, pb.grid);
    EXPECT_TRUE(check.nontrivial);
    EXPECT_GT(check.overlap_measure, 1.0);
    EXPECT_GT(h2_norm(fixed_point_solve(pb.G, pb.F, pb.params).u), 1e-3);
}
