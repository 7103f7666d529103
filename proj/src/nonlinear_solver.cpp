#include "shiftsolve/nonlinear_solver.hpp"

#include "shiftsolve/errors.hpp"
#include "shiftsolve/linear_solver.hpp"
#include "shiftsolve/spectral.hpp"

#include <algorithm>
#include <random>

namespace shiftsolve {

GridFunction Nonlinearity::compose(const GridFunction& v) const {
    const Grid& g = v.grid;
    Eigen::VectorXcd out(g.size());
    for (Eigen::Index j = 0; j < g.size(); ++j) out[j] = eval(v.values[j].real(), g.x(j));
    return {g, std::move(out)};
}

GridFunction Nonlinearity::at_zero(const Grid& grid) const {
    return GridFunction::sample(grid, [this](double x) { return eval(0.0, x); });
}

GridFunction Nonlinearity::envelope_on(const Grid& grid) const { return GridFunction::sample(grid, envelope); }

AssumptionCheck check_assumptions(const Nonlinearity& F, const Grid& grid, std::uint64_t seed, int samples,
                                  double u_range) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Eigen::Index> pick(0, grid.size() - 1);
    std::uniform_real_distribution<double> value(-u_range, u_range);
    constexpr double kSlack = 1e-9;

    AssumptionCheck out{true, true, -std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < samples; ++i) {
        const double x = grid.x(pick(rng));
        const double u1 = value(rng);
        const double u2 = value(rng);
        const double f1 = F.eval(u1, x);
        const double f2 = F.eval(u2, x);
        const double excess = std::abs(f1) - (F.k * std::abs(u1) + F.envelope(x));
        out.worst_growth_excess = std::max(out.worst_growth_excess, excess);
        if (excess > kSlack) out.growth_ok = false;
        const double du = std::abs(u1 - u2);
        const double df = std::abs(f1 - f2);
        if (du > 0.0) out.worst_lipschitz_ratio = std::max(out.worst_lipschitz_ratio, df / du);
        if (df > F.l * du + kSlack) out.lipschitz_ok = false;
    }
    return out;
}

GridFunction convolve(const GridFunction& G, const GridFunction& w) {
    require_same_grid(G.grid, w.grid);
    SpectralFunction ghat = forward_transform(G);
    const SpectralFunction what = forward_transform(w);
    ghat.values = std::sqrt(2.0 * std::numbers::pi) * ghat.values.cwiseProduct(what.values);
    return inverse_transform(ghat);
}

GridFunction convolve_direct(const GridFunction& G, const GridFunction& w) {
    require_same_grid(G.grid, w.grid);
    const Grid& g = G.grid;
    const Eigen::Index n = g.size();
    // x_j - y_k = (j - k) dx is the grid point with index (j - k + N/2) mod N.
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex sum(0.0, 0.0);
        for (Eigen::Index k = 0; k < n; ++k) sum += G.values[((j - k + n / 2) % n + n) % n] * w.values[k];
        out[j] = g.dx() * sum;
    }
    return {g, std::move(out)};
}

ContractionMap::ContractionMap(const GridFunction& G, Nonlinearity F, const ShiftParams& params,
                               const StabilityOptions& opts)
    : G_(G), F_(std::move(F)), params_(params), kernel_(stability_constant(G, params, opts)) {
    require_finite(kernel_);
    const KernelMultipliers mult = kernel_multipliers(G, params, kernel_.cls.resonant(), opts.guard);
    multiplier_ = std::sqrt(2.0 * std::numbers::pi) * mult.plain;
}

GridFunction ContractionMap::operator()(const GridFunction& v) const {
    require_same_grid(v.grid, G_.grid);
    return apply_multiplier(F_.compose(v), multiplier_);
}

GridFunction apply_T(const GridFunction& v, const GridFunction& G, const Nonlinearity& F, const ShiftParams& params) {
    return ContractionMap(G, F, params)(v);
}

double integro_residual(const GridFunction& u, const GridFunction& G, const Nonlinearity& F,
                        const ShiftParams& params) {
    // u'' + a u(x-h) = -(L_h u)
    return l2_norm(convolve_direct(G, F.compose(u)) - apply_operator(u, params));
}

FixedPointResult fixed_point_solve(const GridFunction& G, const Nonlinearity& F, const ShiftParams& params,
                                   const FixedPointOptions& opts) {
    const ContractionMap T(G, F, params, opts.stability);
    const double q = T.q();
    if (!(q < 1.0)) throw ContractionHypothesisFailed(q, 1.0);

    GridFunction v = opts.v0.value_or(GridFunction::zero(G.grid));
    require_same_grid(v.grid, G.grid);

    std::vector<double> steps;
    int iterations = 0;
    while (true) {
        if (iterations >= opts.max_iter)
            throw MaxIterExceeded(iterations, steps.empty() ? 0.0 : steps.back());
        GridFunction next = T(v);
        steps.push_back(h2_norm(next - v));
        v = std::move(next);
        ++iterations;
        if (steps.back() <= opts.tol_h2) break;
    }

    double observed = 0.0;
    for (std::size_t i = 2; i < steps.size(); ++i)
        if (steps[i - 1] > 0.0) observed = std::max(observed, steps[i] / steps[i - 1]);

    int a_priori = 1;
    const double first = steps.front();
    if (q > 0.0 && first > opts.tol_h2 * (1.0 - q))
        a_priori = std::max(1, static_cast<int>(std::ceil(std::log(opts.tol_h2 * (1.0 - q) / first) / std::log(q))));

    const double residual = integro_residual(v, G, F, params);
    const bool nontrivial = h2_norm(v) > 10.0 * opts.tol_h2;
    return {std::move(v), iterations, std::move(steps), observed, q, a_priori, residual, nontrivial, T.kernel()};
}

NontrivialityReport nontriviality_check(const GridFunction& G, const Nonlinearity& F, const Grid& grid,
                                        double threshold) {
    require_same_grid(G.grid, grid);
    const Eigen::VectorXd ghat = forward_transform(G).values.cwiseAbs();
    const Eigen::VectorXd fhat = forward_transform(F.at_zero(grid)).values.cwiseAbs();
    const double gmax = ghat.maxCoeff();
    const double fmax = fhat.maxCoeff();
    Eigen::Index bins = 0;
    if (gmax > 0.0 && fmax > 0.0)
        for (Eigen::Index k = 0; k < grid.size(); ++k)
            if (ghat[k] > threshold * gmax && fhat[k] > threshold * fmax) ++bins;
    const double measure = static_cast<double>(bins) * grid.dp();
    return {bins, measure, measure > 0.0};
}

}  // namespace shiftsolve
