#pragma once

#include "shiftsolve/grid.hpp"
#include "shiftsolve/shift_operator.hpp"

namespace shiftsolve {

struct SolvabilityReport {
    FredholmClass cls;
    Complex fhat_plus;   ///< f^(+sqrt(a)) = (f, e^{i sqrt(a) x}/sqrt(2pi))
    Complex fhat_minus;  ///< f^(-sqrt(a))
    double weighted_l1;  ///< ||x f||_{L^1}
    bool solvable;
    double tolerance_used;
};

struct LinearSolveOptions {
    double tol_orth = 1e-8;
    /// Absolute tolerance in h for the resonance test; defaults to 1e-9 |h|.
    std::optional<double> resonance_tol;
    /// Resonant bins: |lambda_h(p_k)|^2 < guard * a^2 get a zero quotient.
    double guard = 1e-8;
};

struct LinearSolveResult {
    GridFunction u;
    /// ||-u'' - a u(x-h) - f||_{L^2}, recomputed with apply_operator.
    double residual_l2;
    SolvabilityReport solvability;
    double h2_norm_u;
    /// Number of frequencies whose quotient was zeroed by the resonance guard.
    int zeroed_bins;
};

/// f^(+-sqrt(a)) via off-grid quadrature; NonResonant inputs are always
/// solvable.
SolvabilityReport check_solvability(const GridFunction& f, const ShiftParams& params, double tol,
                                    std::optional<double> resonance_tol = std::nullopt);

/// u^ = f^ / lambda_h on every grid frequency. Throws ResonantNotSolvable when
/// the orthogonality conditions fail, NearSingularGrid when a non-resonant
/// symbol dips below alpha/2 on the grid.
LinearSolveResult solve_linear(const GridFunction& f, const ShiftParams& params,
                               const LinearSolveOptions& opts = {});

/// -u'' - a u(x - h), both terms spectral.
GridFunction apply_operator(const GridFunction& u, const ShiftParams& params);

/// Subtracts windowed harmonics c+ w(x) e^{i sqrt(a) x} + c- w(x) e^{-i sqrt(a) x}
/// (w a fixed Gaussian window) so that the result has vanishing transform at
/// +-sqrt(a).
GridFunction project_solvable(const GridFunction& f, const ShiftParams& params);

/// Width of the Gaussian window used by project_solvable.
double projection_window_width(const ShiftParams& params);

struct DerivativeBoundCheck {
    double derivative;  ///< |d f^/dp| by central differences
    double bound;       ///< ||x f||_{L^1} / sqrt(2 pi)
    bool holds;
};

/// Diagnostic check of |d f^/dp (p)| <= ||x f||_{L^1} / sqrt(2 pi).
DerivativeBoundCheck derivative_bound_check(const GridFunction& f, double p, double step = 1e-4);

/// dp * sum |f^/lambda_h|^2 over grid frequencies with ||p| - sqrt(a)| < half_width.
/// Diverges as the grid is refined unless f^(+-sqrt(a)) = 0.
double resonant_quotient_mass(const GridFunction& f, const ShiftParams& params, double half_width);

}  // namespace shiftsolve
