#pragma once

#include "shiftsolve/grid.hpp"

#include <optional>

namespace shiftsolve {

/// Coefficients of L_h u = -u'' - a u(x - h). Requires a > 0 and h != 0.
class ShiftParams {
public:
    ShiftParams(double a, double h);

    double a() const { return a_; }
    double h() const { return h_; }
    double sqrt_a() const { return std::sqrt(a_); }

private:
    double a_;
    double h_;
};

/// lambda_h(p) = p^2 - a cos(ph) + i a sin(ph) = p^2 - a e^{-iph}
Complex symbol(double p, const ShiftParams& params);

/// (p^2 - a)^2 + 2 a p^2 (1 - cos(ph)); identically |symbol(p)|^2.
double symbol_modulus_sq(double p, const ShiftParams& params);

/// symbol() on every grid frequency.
Eigen::VectorXcd symbol_on(const Grid& grid, const ShiftParams& params);

enum class FredholmKind { NonResonant, Resonant };

struct FredholmClass {
    FredholmKind kind;
    /// Resonance index n with h = 2 pi n / sqrt(a); set iff Resonant.
    std::optional<int> n;
    /// Sampled minimum of |lambda_h|^2 (not a proven bound); set iff NonResonant.
    std::optional<double> alpha;

    bool resonant() const { return kind == FredholmKind::Resonant; }
};

/// Default classification tolerance, 1e-9 relative in h.
double default_resonance_tol(const ShiftParams& params);

/// Resonant with n iff n = round(h sqrt(a) / 2pi) != 0 and
/// |h - 2 pi n / sqrt(a)| <= tol. Requires 0 < tol < pi / sqrt(a).
FredholmClass classify(const ShiftParams& params, double tol);
FredholmClass classify(const ShiftParams& params);

/// Minimum of |lambda_h(p)|^2, densely sampled on [-P, P] with
/// P = 2 (1 + sqrt(a)) and Brent refinement at every sampled local
/// minimum. Throws NumericalError when the minimum is at machine zero.
double estimate_alpha(const ShiftParams& params);

/// Search window used by estimate_alpha.
double alpha_search_window(const ShiftParams& params);

}  // namespace shiftsolve
