#include "shiftsolve/errors.hpp"
#include "shiftsolve/spectral.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace shiftsolve;

namespace {

const double kPi = std::numbers::pi;

GridFunction gaussian(const Grid& g, double s = 1.0, double c = 0.0) {
    return GridFunction::sample(g, [=](double x) { return std::exp(-(x - c) * (x - c) / (2.0 * s * s)); });
}

// (1/sqrt(2pi)) sum_j u_j e^{-i p_k x_j} dx, evaluated term by term.
Eigen::VectorXcd direct_dft(const GridFunction& u) {
    const Grid& g = u.grid;
    Eigen::VectorXcd out(g.size());
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        Complex acc = 0.0;
        for (Eigen::Index j = 0; j < g.size(); ++j) acc += u.values[j] * std::polar(1.0, -g.p(k) * g.x(j));
        out[k] = acc * g.dx() / std::sqrt(2.0 * kPi);
    }
    return out;
}

}  // namespace

TEST(Grid, Geometry) {
    const Grid g = make_grid(40.0, 4096);
    EXPECT_DOUBLE_EQ(g.dx(), 80.0 / 4096);
    EXPECT_DOUBLE_EQ(g.dp(), kPi / 40.0);
    EXPECT_DOUBLE_EQ(g.x(0), -40.0);
    EXPECT_DOUBLE_EQ(g.p(2048), 0.0);
    EXPECT_DOUBLE_EQ(g.p(0), -g.band_limit());
}

TEST(Grid, RejectsInvalidShapes) {
    EXPECT_THROW(make_grid(0.0, 64), std::invalid_argument);
    EXPECT_THROW(make_grid(-1.0, 64), std::invalid_argument);
    EXPECT_THROW(make_grid(10.0, 63), std::invalid_argument);
    EXPECT_THROW(make_grid(10.0, 4), std::invalid_argument);
}

TEST(GridFunction, RejectsNonFiniteAndWrongSize) {
    const Grid g = make_grid(10.0, 16);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
    v[3] = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(GridFunction(g, v), std::invalid_argument);
    EXPECT_THROW(GridFunction(g, Eigen::VectorXcd::Zero(15)), std::invalid_argument);
}

TEST(GridFunction, ArithmeticNeedsMatchingGrids) {
    const GridFunction u = GridFunction::zero(make_grid(10.0, 16));
    const GridFunction v = GridFunction::zero(make_grid(10.0, 32));
    EXPECT_THROW(u + v, GridMismatch);
    EXPECT_THROW(u - v, GridMismatch);
}

TEST(Transform, GaussianPair) {
    const Grid g = make_grid(40.0, 4096);
    const SpectralFunction uhat = forward_transform(gaussian(g));
    for (Eigen::Index k = 0; k < g.size(); ++k)
        ASSERT_NEAR(std::abs(uhat.values[k] - std::exp(-g.p(k) * g.p(k) / 2.0)), 0.0, 1e-13) << "k=" << k;
}

TEST(Transform, ShiftedGaussianPhase) {
    const Grid g = make_grid(40.0, 2048);
    const SpectralFunction uhat = forward_transform(gaussian(g, 0.8, 1.5));
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        const double p = g.p(k);
        const Complex expected = 0.8 * std::exp(-0.32 * p * p) * std::polar(1.0, -1.5 * p);
        ASSERT_NEAR(std::abs(uhat.values[k] - expected), 0.0, 1e-13);
    }
}

TEST(Transform, MatchesDirectDft) {
    std::mt19937_64 rng(11);
    const Grid g = make_grid(7.0, 128);
    Eigen::VectorXcd v(g.size());
    std::normal_distribution<double> n;
    for (auto& z : v) z = {n(rng), n(rng)};
    const GridFunction u(g, v);
    const Eigen::VectorXcd fast = forward_transform(u).values;
    const Eigen::VectorXcd slow = direct_dft(u);
    EXPECT_LE((fast - slow).norm(), 1e-12 * slow.norm());
}

TEST(Transform, RoundTripAndParseval) {
    std::mt19937_64 rng(12);
    const Grid g = make_grid(40.0, 4096);
    for (int trial = 0; trial < 20; ++trial) {
        const GridFunction u = testing_support::random_smooth(g, rng, true);
        const SpectralFunction uhat = forward_transform(u);
        const GridFunction back = inverse_transform(uhat);
        EXPECT_LE((back.values - u.values).norm(), 1e-13 * u.values.norm());
        EXPECT_NEAR(l2_norm(uhat), l2_norm(u), 1e-13 * l2_norm(u));
    }
}

TEST(Transform, OffGridEvaluationMatchesClosedForm) {
    const Grid g = make_grid(40.0, 4096);
    const GridFunction u = gaussian(g);
    for (double p : {0.0, 0.3, 1.0, -1.0, 2.71828, -5.5})
        EXPECT_NEAR(std::abs(evaluate_transform_at(u, p) - std::exp(-p * p / 2.0)), 0.0, 1e-14) << p;
}

TEST(Shift, TranslatesAndIsUnitary) {
    const Grid g = make_grid(40.0, 4096);
    const GridFunction u = gaussian(g);
    for (double h : {1.0, -2.5, kPi}) {
        const GridFunction shifted = shift(u, h);
        const GridFunction expected = gaussian(g, 1.0, h);
        EXPECT_LE((shifted.values - expected.values).cwiseAbs().maxCoeff(), 1e-13);
    }
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const GridFunction v = testing_support::random_smooth(g, rng, true);
        EXPECT_NEAR(l2_norm(shift(v, 0.37 * trial + 0.1)), l2_norm(v), 1e-13 * l2_norm(v));
    }
}

TEST(Derivative, SecondDerivativeOfGaussian) {
    const Grid g = make_grid(40.0, 4096);
    const GridFunction u = GridFunction::sample(g, [](double x) { return std::exp(-x * x); });
    const GridFunction d2 = second_derivative(u);
    const GridFunction expected = GridFunction::sample(g, [](double x) { return (4 * x * x - 2) * std::exp(-x * x); });
    EXPECT_LE((d2.values - expected.values).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(Norms, GaussianClosedForms) {
    const Grid g = make_grid(40.0, 4096);
    const GridFunction u = gaussian(g);
    EXPECT_NEAR(l2_norm(u), std::sqrt(std::sqrt(kPi)), 1e-13);
    EXPECT_NEAR(l1_norm(u), std::sqrt(2 * kPi), 1e-12);
    // trapezoid error from the kink of |x| at 0 is dx^2/6 |u(0)|
    EXPECT_NEAR(weighted_l1_norm(u), 2.0 - g.dx() * g.dx() / 6.0, std::pow(g.dx(), 4));
    EXPECT_NEAR(linf_norm(u), 1.0, 1e-15);
    // ||u||^2 + ||u''||^2 = sqrt(pi) + (3/4) sqrt(pi)
    EXPECT_NEAR(h2_norm(u), std::sqrt(1.75 * std::sqrt(kPi)), 1e-12);
    EXPECT_NEAR(h2_norm(forward_transform(u)), h2_norm(u), 1e-13);
}

TEST(Norms, SupBoundOfTransform) {
    // |u^(p)| <= ||u||_1 / sqrt(2 pi)
    std::mt19937_64 rng(14);
    const Grid g = make_grid(40.0, 2048);
    for (int trial = 0; trial < 30; ++trial) {
        const GridFunction u = testing_support::random_smooth(g, rng, true);
        EXPECT_LE(linf_norm(forward_transform(u)), l1_norm(u) / std::sqrt(2 * kPi) * (1 + 1e-12));
    }
}
