#pragma once

#include "shiftsolve/grid.hpp"
#include "shiftsolve/shift_operator.hpp"

#include <vector>

namespace shiftsolve {

struct KernelOrthogonality {
    Complex ghat_plus;
    Complex ghat_minus;
    bool orthogonal;
};

/// G^(+-sqrt(a)) by quadrature and whether both are within tol.
KernelOrthogonality kernel_orthogonality(const GridFunction& G, double a, double tol);

/// The two Fourier multipliers of the integro-differential problem sampled on
/// the grid: plain = G^ / (p^2 - a e^{-iph}), weighted = p^2 G^ / (p^2 - a e^{-iph}).
/// Frequencies listed in `singular` (resonant case only, |lambda|^2 < guard a^2)
/// are set to zero.
struct KernelMultipliers {
    Eigen::VectorXcd ghat;
    Eigen::VectorXcd plain;
    Eigen::VectorXcd weighted;
    std::vector<Eigen::Index> singular;
};

KernelMultipliers kernel_multipliers(const GridFunction& G, const ShiftParams& params, bool resonant,
                                     double guard = 1e-8);

struct KernelReport {
    FredholmClass cls;
    /// max(sup1, sup2); meaningful only when finite.
    double N = 0.0;
    double sup1 = 0.0;  ///< sup |G^ / (p^2 - a e^{-iph})|
    double sup2 = 0.0;  ///< sup |p^2 G^ / (p^2 - a e^{-iph})|
    /// False exactly in the resonant case with orthogonality violated. Used in
    /// place of an infinite N.
    bool finite = true;
    Complex ghat_plus;
    Complex ghat_minus;
    double l1_norm_G = 0.0;
    double weighted_l1_G = 0.0;
    double ghat_sup = 0.0;  ///< max |G^| on the grid
    /// ||xG||_1 / sqrt(2 pi a), the value used in resonant singular bins.
    double singular_cap = 0.0;
    /// max |G^| over the outer tenth of the band; certifies the band-limited sup.
    double tail_max = 0.0;
    bool tail_ok = true;
    /// sup2 <= ||G^||_inf + a sup1 within sampling slack.
    bool identity_ok = true;
    double tolerance_used = 0.0;
};

struct StabilityOptions {
    double tol_orth = 1e-8;
    std::optional<double> resonance_tol;
    double guard = 1e-8;
    /// Off-grid refinement samples on each side of +-sqrt(a).
    int refinement_samples = 32;
};

/// N_{a,h} = max(sup1, sup2) over the resolvable band plus off-grid samples
/// around +-sqrt(a). Resonant kernels that are not orthogonal give finite = false.
KernelReport stability_constant(const GridFunction& G, const ShiftParams& params,
                                const StabilityOptions& opts = {});

/// Throws NotFinite when the report is not finite; returns N otherwise.
double require_finite(const KernelReport& report);

/// 1 - 2 sqrt(pi) N l. Positive iff the contraction hypothesis holds.
double contraction_margin(double N, double l);

/// 2 sqrt(pi) N l.
double contraction_constant(double N, double l);

/// max |G^(p)/lambda_h(p)| over p = +-sqrt(a) +- offset.
double quotient_sup_near_resonance(const GridFunction& G, const ShiftParams& params, double offset);

/// Largest defect of p^2 G^/lambda - G^ - a e^{-iph} G^/lambda over the grid, relative to
/// |p^2 G^/lambda| + |G^| + a |G^/lambda|.
double multiplier_identity_defect(const GridFunction& G, const ShiftParams& params);

}  // namespace shiftsolve
