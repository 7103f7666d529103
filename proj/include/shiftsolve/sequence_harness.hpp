#pragma once

#include "shiftsolve/grid.hpp"
#include "shiftsolve/nonlinear_solver.hpp"
#include "shiftsolve/shift_operator.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace shiftsolve {

enum class SequenceKind { RhsSequence, KernelSequence };

/// A convergent sequence of right-hand sides f_m -> f or kernels G_m -> G.
struct SequenceSpec {
    SequenceKind kind;
    std::function<GridFunction(int)> generator;  ///< defined for 1 <= m <= M
    GridFunction limit;
    int M = 12;
    /// Uniform contraction slack for kernel sequences: 2 sqrt(pi) N_m l <= 1 - epsilon.
    double epsilon = 0.5;
    std::string name;
};

struct ConvergenceRow {
    int m;
    double input_gap;        ///< ||f_m - f||_2 or ||G_m - G||_1
    double weighted_gap;     ///< ||x (f_m - f)||_1 or ||x (G_m - G)||_1
    double solution_gap_h2;  ///< ||u_m - u||_{H^2}
    double solution_gap_l2;
    double second_derivative_gap;  ///< ||u_m'' - u''||_2
    double multiplier_gap;         ///< kernel runs: sup |(G_m^ - G^)/lambda|
    double weighted_multiplier_gap;  ///< kernel runs: sup |p^2 (G_m^ - G^)/lambda|
    double ghat_gap;                 ///< kernel runs: sup |G_m^ - G^|
    double N_m;                      ///< kernel runs
};

/// Named bound checked over the whole table.
struct BoundCheck {
    std::string name;
    bool passed;
    double worst;  ///< largest lhs / rhs ratio (<= 1 passes) or largest excess
};

struct ConvergenceTable {
    SequenceKind kind;
    FredholmClass cls;
    std::vector<ConvergenceRow> rows;
    double N_limit = 0.0;  ///< kernel runs
    std::vector<BoundCheck> checks;

    bool all_passed() const;
};

struct SequenceOptions {
    double tol_orth = 1e-8;
    std::optional<double> resonance_tol;
    double tol_h2 = 1e-10;
    int max_iter = 500;
};

/// Solves every member and the limit of -u'' - a u(x-h) = f_m and tabulates the gaps.
ConvergenceTable run_linear_sequence(const SequenceSpec& spec, const ShiftParams& params,
                                     const SequenceOptions& opts = {});

/// Solves every member and the limit of u'' + a u(x-h) + int G_m(x-y) F(u) dy = 0.
ConvergenceTable run_kernel_sequence(const SequenceSpec& spec, const Nonlinearity& F, const ShiftParams& params,
                                     const SequenceOptions& opts = {});

/// Catalog of reproducible generators around a limit function:
///  - "scale":     f_m = (1 - 1/m) f;              ||f_m - f|| = ||f|| / m in every norm
///  - "alternate": f_m = (1 + (-1)^m / (2m)) f;    ||f_m - f|| = ||f|| / (2m)
///  - "add":       f_m = f + g / m (g = `perturbation`); gap ||g|| / m
///  - "truncate":  f_m = f chi_m, chi_m a C-infinity cutoff equal to 1 on [-m, m]
///                 and 0 outside [-m-1, m+1]; ||f_m - f||_1 <= int_{|x|>m} |f|
///  - "constant":  f_m = f
/// In the resonant case "add" and "truncate" members are re-projected with
/// project_solvable so every member satisfies the orthogonality conditions.
SequenceSpec builtin_sequence(const std::string& name, SequenceKind kind, const GridFunction& limit,
                              const ShiftParams& params, int M = 12,
                              std::optional<GridFunction> perturbation = std::nullopt, double epsilon = 0.5);

/// C-infinity step: 1 for |x| <= m, 0 for |x| >= m + 1.
double smooth_cutoff(double x, double m);

}  // namespace shiftsolve
