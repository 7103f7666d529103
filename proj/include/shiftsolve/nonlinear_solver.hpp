#pragma once

#include "shiftsolve/grid.hpp"
#include "shiftsolve/kernel_analysis.hpp"
#include "shiftsolve/shift_operator.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace shiftsolve {

/// F(u, x) with |F(u,x)| <= k |u| + envelope(x) and Lipschitz constant l in u.
/// The constants are declared by the caller and spot-checked by check_assumptions.
struct Nonlinearity {
    std::string name;
    std::function<double(double, double)> eval;
    double k = 0.0;
    std::function<double(double)> envelope;
    double l = 0.0;

    /// x -> F(v(x), x) on v's grid (real part of v).
    GridFunction compose(const GridFunction& v) const;
    /// x -> F(0, x)
    GridFunction at_zero(const Grid& grid) const;
    GridFunction envelope_on(const Grid& grid) const;
};

struct AssumptionCheck {
    bool growth_ok;
    bool lipschitz_ok;
    double worst_growth_excess;  ///< max |F| - (k|u| + envelope)
    double worst_lipschitz_ratio;
};

/// Randomized check of the growth and Lipschitz bounds with 1e-9 slack.
AssumptionCheck check_assumptions(const Nonlinearity& F, const Grid& grid, std::uint64_t seed,
                                  int samples = 10000, double u_range = 10.0);

/// inverse transform of sqrt(2 pi) G^ w^, i.e. periodic int G(x-y) w(y) dy.
GridFunction convolve(const GridFunction& G, const GridFunction& w);

/// O(N^2) periodic quadrature sum_k G(x_j - y_k) w(y_k) dx.
GridFunction convolve_direct(const GridFunction& G, const GridFunction& w);

/// The map v -> u solving -u'' - a u(x-h) = int G(x-y) F(v(y), y) dy,
/// with G's multiplier precomputed.
class ContractionMap {
public:
    ContractionMap(const GridFunction& G, Nonlinearity F, const ShiftParams& params,
                   const StabilityOptions& opts = {});

    GridFunction operator()(const GridFunction& v) const;

    const KernelReport& kernel() const { return kernel_; }
    const Nonlinearity& nonlinearity() const { return F_; }
    /// 2 sqrt(pi) N l
    double q() const { return contraction_constant(kernel_.N, F_.l); }

private:
    GridFunction G_;
    Nonlinearity F_;
    ShiftParams params_;
    KernelReport kernel_;
    Eigen::VectorXcd multiplier_;  // sqrt(2 pi) G^ / lambda_h, singular bins zeroed
};

/// One application of the map; throws NotFinite in the resonant
/// non-orthogonal case.
GridFunction apply_T(const GridFunction& v, const GridFunction& G, const Nonlinearity& F,
                     const ShiftParams& params);

struct FixedPointOptions {
    std::optional<GridFunction> v0;  ///< defaults to zero
    double tol_h2 = 1e-10;
    int max_iter = 500;
    StabilityOptions stability;
};

struct FixedPointResult {
    GridFunction u;
    int iterations;
    std::vector<double> step_norms;  ///< ||v_{k+1} - v_k||_{H^2}
    double observed_ratio;           ///< max step_{k}/step_{k-1} past the first two iterations
    double q_bound;                  ///< 2 sqrt(pi) N l
    int a_priori_iterations;         ///< smallest k with q^k ||v1 - v0|| (1-q)^{-1} <= tol
    /// ||u'' + a u(x-h) + int G(x-y) F(u(y),y) dy||_{L^2} with the convolution
    /// recomputed by direct summation.
    double residual_l2;
    bool nontrivial;
    KernelReport kernel;
};

/// Picard iteration v_{k+1} = T v_k. Refuses (ContractionHypothesisFailed)
/// unless 2 sqrt(pi) N l < 1.
FixedPointResult fixed_point_solve(const GridFunction& G, const Nonlinearity& F, const ShiftParams& params,
                                   const FixedPointOptions& opts = {});

/// Residual of u'' + a u(x-h) + int G(x-y) F(u(y), y) dy = 0, direct convolution.
double integro_residual(const GridFunction& u, const GridFunction& G, const Nonlinearity& F,
                        const ShiftParams& params);

struct NontrivialityReport {
    Eigen::Index overlap_bins;
    double overlap_measure;  ///< overlap_bins * dp
    bool nontrivial;
};

/// Thresholded proxy for "supp F(0,.)^ and supp G^ overlap on a set of positive
/// measure". threshold is relative to the maximum of each transform.
NontrivialityReport nontriviality_check(const GridFunction& G, const Nonlinearity& F, const Grid& grid,
                                        double threshold = 1e-12);

}  // namespace shiftsolve
