#include "shiftsolve/kernel_analysis.hpp"

#include "shiftsolve/errors.hpp"
#include "shiftsolve/spectral.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <functional>

namespace shiftsolve {

KernelOrthogonality kernel_orthogonality(const GridFunction& G, double a, double tol) {
    if (!(a > 0.0)) throw std::invalid_argument("kernel_orthogonality: a must be positive");
    const double k0 = std::sqrt(a);
    const Complex plus = evaluate_transform_at(G, k0);
    const Complex minus = evaluate_transform_at(G, -k0);
    return {plus, minus, std::abs(plus) <= tol && std::abs(minus) <= tol};
}

KernelMultipliers kernel_multipliers(const GridFunction& G, const ShiftParams& params, bool resonant, double guard) {
    const Grid& g = G.grid;
    const Eigen::VectorXcd lambda = symbol_on(g, params);
    const double threshold = guard * params.a() * params.a();
    KernelMultipliers out{forward_transform(G).values, Eigen::VectorXcd(g.size()), Eigen::VectorXcd(g.size()), {}};
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        if (resonant && std::norm(lambda[k]) < threshold) {
            out.plain[k] = 0.0;
            out.weighted[k] = 0.0;
            out.singular.push_back(k);
            continue;
        }
        const double p = g.p(k);
        out.plain[k] = out.ghat[k] / lambda[k];
        out.weighted[k] = p * p * out.plain[k];
    }
    return out;
}

namespace {

// Brent refinement of |m(p)| on [p_{k-1}, p_{k+1}] for every grid local maximum
// within a factor two of the grid supremum.
double refine_local_maxima(const Eigen::VectorXcd& sampled, const Grid& g,
                           const std::function<double(double)>& modulus) {
    const Eigen::VectorXd mag = sampled.cwiseAbs();
    const double grid_max = mag.maxCoeff();
    double best = grid_max;
    for (Eigen::Index k = 1; k + 1 < g.size(); ++k) {
        if (mag[k] < 0.5 * grid_max || mag[k] < mag[k - 1] || mag[k] < mag[k + 1]) continue;
        const auto negated = [&](double p) { return -modulus(p); };
        const auto [arg, value] = boost::math::tools::brent_find_minima(negated, g.p(k - 1), g.p(k + 1), 40);
        (void)arg;
        best = std::max(best, -value);
    }
    return best;
}

}  // namespace

KernelReport stability_constant(const GridFunction& G, const ShiftParams& params, const StabilityOptions& opts) {
    const Grid& g = G.grid;
    KernelReport report;
    report.cls = opts.resonance_tol ? classify(params, *opts.resonance_tol) : classify(params);
    report.tolerance_used = opts.tol_orth;
    const KernelOrthogonality orth = kernel_orthogonality(G, params.a(), opts.tol_orth);
    report.ghat_plus = orth.ghat_plus;
    report.ghat_minus = orth.ghat_minus;
    report.l1_norm_G = l1_norm(G);
    report.weighted_l1_G = weighted_l1_norm(G);
    report.singular_cap = report.weighted_l1_G / std::sqrt(2.0 * std::numbers::pi * params.a());

    const bool resonant = report.cls.resonant();
    if (resonant && !orth.orthogonal) {
        report.finite = false;
        return report;
    }

    const KernelMultipliers mult = kernel_multipliers(G, params, resonant, opts.guard);
    report.sup1 = mult.plain.cwiseAbs().maxCoeff();
    report.sup2 = mult.weighted.cwiseAbs().maxCoeff();
    report.ghat_sup = mult.ghat.cwiseAbs().maxCoeff();
    if (!mult.singular.empty()) {
        // |G^(p)| <= |p -+ sqrt(a)| ||xG||_1 / sqrt(2pi) caps the quotient in the singular bins.
        report.sup1 = std::max(report.sup1, report.singular_cap);
        report.sup2 = std::max(report.sup2, params.a() * report.singular_cap);
    }

    // Off-grid refinement around +-sqrt(a), where the symbol is smallest in magnitude.
    const double threshold = opts.guard * params.a() * params.a();
    double ghat_sup_refined = report.ghat_sup;
    for (const double centre : {params.sqrt_a(), -params.sqrt_a()}) {
        for (int i = -opts.refinement_samples; i <= opts.refinement_samples; ++i) {
            const double p = centre + g.dp() * static_cast<double>(i) / opts.refinement_samples;
            const double mod_sq = symbol_modulus_sq(p, params);
            if (resonant && mod_sq < threshold) continue;
            const Complex ghat = evaluate_transform_at(G, p);
            const double plain = std::abs(ghat) / std::sqrt(mod_sq);
            ghat_sup_refined = std::max(ghat_sup_refined, std::abs(ghat));
            report.sup1 = std::max(report.sup1, plain);
            report.sup2 = std::max(report.sup2, p * p * plain);
        }
    }
    if (mult.singular.empty()) {
        auto quotient = [&](double p) { return std::abs(evaluate_transform_at(G, p)) / std::sqrt(symbol_modulus_sq(p, params)); };
        report.sup1 = std::max(report.sup1, refine_local_maxima(mult.plain, g, quotient));
        report.sup2 = std::max(report.sup2,
                               refine_local_maxima(mult.weighted, g, [&](double p) { return p * p * quotient(p); }));
    }
    report.N = std::max(report.sup1, report.sup2);

    const double band_edge = 0.9 * g.band_limit();
    for (Eigen::Index k = 0; k < g.size(); ++k)
        if (std::abs(g.p(k)) >= band_edge) report.tail_max = std::max(report.tail_max, std::abs(mult.ghat[k]));
    report.tail_ok = report.tail_max <= 1e-14 * report.ghat_sup || report.ghat_sup == 0.0;
    report.identity_ok = report.sup2 <= (ghat_sup_refined + params.a() * report.sup1) * (1.0 + 1e-9) + 1e-300;
    return report;
}

double require_finite(const KernelReport& report) {
    if (!report.finite) throw NotFinite(report.ghat_plus, report.ghat_minus, report.tolerance_used);
    return report.N;
}

double contraction_constant(double N, double l) { return 2.0 * std::sqrt(std::numbers::pi) * N * l; }

double contraction_margin(double N, double l) { return 1.0 - contraction_constant(N, l); }

double quotient_sup_near_resonance(const GridFunction& G, const ShiftParams& params, double offset) {
    double sup = 0.0;
    for (const double centre : {params.sqrt_a(), -params.sqrt_a()})
        for (const double side : {-offset, offset}) {
            const double p = centre + side;
            sup = std::max(sup, std::abs(evaluate_transform_at(G, p)) / std::sqrt(symbol_modulus_sq(p, params)));
        }
    return sup;
}

double multiplier_identity_defect(const GridFunction& G, const ShiftParams& params) {
    const Grid& g = G.grid;
    const SpectralFunction ghat = forward_transform(G);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        const double p = g.p(k);
        const Complex lambda = symbol(p, params);
        if (std::norm(lambda) == 0.0) continue;
        const Complex quotient = ghat.values[k] / lambda;
        const Complex lhs = p * p * quotient;
        const Complex rhs = ghat.values[k] + params.a() * std::polar(1.0, -p * params.h()) * quotient;
        // Scale by the individual terms: at p = 0 both sides cancel to round-off.
        const double scale = std::abs(lhs) + std::abs(ghat.values[k]) + params.a() * std::abs(quotient);
        if (scale == 0.0) continue;
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

}  // namespace shiftsolve
