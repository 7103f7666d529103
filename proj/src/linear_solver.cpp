#include "shiftsolve/linear_solver.hpp"

#include "shiftsolve/errors.hpp"
#include "shiftsolve/spectral.hpp"

#include <Eigen/Dense>

namespace shiftsolve {

SolvabilityReport check_solvability(const GridFunction& f, const ShiftParams& params, double tol,
                                    std::optional<double> resonance_tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("orthogonality tolerance must be positive");
    SolvabilityReport report{
        .cls = resonance_tol ? classify(params, *resonance_tol) : classify(params),
        .fhat_plus = evaluate_transform_at(f, params.sqrt_a()),
        .fhat_minus = evaluate_transform_at(f, -params.sqrt_a()),
        .weighted_l1 = weighted_l1_norm(f),
        .solvable = true,
        .tolerance_used = tol,
    };
    if (report.cls.resonant())
        report.solvable = std::abs(report.fhat_plus) <= tol && std::abs(report.fhat_minus) <= tol;
    return report;
}

GridFunction apply_operator(const GridFunction& u, const ShiftParams& params) {
    return apply_multiplier(u, symbol_on(u.grid, params));
}

LinearSolveResult solve_linear(const GridFunction& f, const ShiftParams& params, const LinearSolveOptions& opts) {
    SolvabilityReport solvability = check_solvability(f, params, opts.tol_orth, opts.resonance_tol);
    if (!solvability.solvable)
        throw ResonantNotSolvable(solvability.fhat_plus, solvability.fhat_minus, opts.tol_orth);

    const Grid& g = f.grid;
    const Eigen::VectorXcd lambda = symbol_on(g, params);
    const double guard = opts.guard * params.a() * params.a();

    SpectralFunction uhat = forward_transform(f);
    int zeroed = 0;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        const double mod_sq = std::norm(lambda[k]);
        if (!solvability.cls.resonant()) {
            if (mod_sq < 0.5 * *solvability.cls.alpha)
                throw NearSingularGrid("symbol modulus below alpha/2 at p = " + std::to_string(g.p(k)));
            uhat.values[k] /= lambda[k];
        } else if (mod_sq < guard) {
            uhat.values[k] = 0.0;
            ++zeroed;
        } else {
            uhat.values[k] /= lambda[k];
        }
    }

    GridFunction u = inverse_transform(uhat);
    const double residual = l2_norm(apply_operator(u, params) - f);
    const double h2 = h2_norm(u);
    return {std::move(u), residual, solvability, h2, zeroed};
}

double projection_window_width(const ShiftParams& params) { return std::max(1.0, 2.0 / params.sqrt_a()); }

GridFunction project_solvable(const GridFunction& f, const ShiftParams& params) {
    const Grid& g = f.grid;
    const double k0 = params.sqrt_a();
    const double sigma = projection_window_width(params);
    auto window = [sigma](double x) { return std::exp(-x * x / (2.0 * sigma * sigma)); };
    const GridFunction plus = GridFunction::sample(g, [&](double x) { return window(x) * std::polar(1.0, k0 * x); });
    const GridFunction minus = GridFunction::sample(g, [&](double x) { return window(x) * std::polar(1.0, -k0 * x); });

    Eigen::Matrix2cd system;
    system << evaluate_transform_at(plus, k0), evaluate_transform_at(minus, k0),
              evaluate_transform_at(plus, -k0), evaluate_transform_at(minus, -k0);
    const Eigen::Vector2cd rhs(evaluate_transform_at(f, k0), evaluate_transform_at(f, -k0));
    const Eigen::Vector2cd coeff = system.partialPivLu().solve(rhs);

    Eigen::VectorXcd out = f.values - coeff[0] * plus.values - coeff[1] * minus.values;
    if (f.values.imag().isZero(0.0)) out = out.real().cast<Complex>();
    return {g, std::move(out)};
}

DerivativeBoundCheck derivative_bound_check(const GridFunction& f, double p, double step) {
    const Complex forward = evaluate_transform_at(f, p + step);
    const Complex backward = evaluate_transform_at(f, p - step);
    const double derivative = std::abs(forward - backward) / (2.0 * step);
    const double bound = weighted_l1_norm(f) / std::sqrt(2.0 * std::numbers::pi);
    // Central differences carry an O(step^2) error; allow it explicitly.
    return {derivative, bound, derivative <= bound * (1.0 + 1e-6) + 1e-12};
}

double resonant_quotient_mass(const GridFunction& f, const ShiftParams& params, double half_width) {
    const Grid& g = f.grid;
    const SpectralFunction fhat = forward_transform(f);
    const double k0 = params.sqrt_a();
    double mass = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        const double p = g.p(k);
        if (std::abs(std::abs(p) - k0) >= half_width) continue;
        mass += std::norm(fhat.values[k]) / symbol_modulus_sq(p, params);
    }
    return g.dp() * mass;
}

}  // namespace shiftsolve
