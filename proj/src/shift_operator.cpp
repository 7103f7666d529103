#include "shiftsolve/shift_operator.hpp"

#include "shiftsolve/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace shiftsolve {

ShiftParams::ShiftParams(double a, double h) : a_(a), h_(h) {
    if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("shift coefficient a must be positive and finite");
    if (h == 0.0 || !std::isfinite(h)) throw std::invalid_argument("shift h must be nonzero and finite");
}

Complex symbol(double p, const ShiftParams& params) {
    const double a = params.a();
    const double ph = p * params.h();
    return {std::fma(p, p, -a * std::cos(ph)), a * std::sin(ph)};
}

double symbol_modulus_sq(double p, const ShiftParams& params) {
    const double a = params.a();
    // 1 - cos(ph) = 2 sin^2(ph/2), and fma keeps p^2 - a accurate near p^2 = a.
    const double d = std::fma(p, p, -a);
    const double s = p * std::sin(0.5 * p * params.h());
    return d * d + 4.0 * a * s * s;
}

Eigen::VectorXcd symbol_on(const Grid& grid, const ShiftParams& params) {
    Eigen::VectorXcd out(grid.size());
    for (Eigen::Index k = 0; k < grid.size(); ++k) out[k] = symbol(grid.p(k), params);
    return out;
}

double default_resonance_tol(const ShiftParams& params) { return 1e-9 * std::abs(params.h()); }

FredholmClass classify(const ShiftParams& params, double tol) {
    const double sqrt_a = params.sqrt_a();
    if (!(tol > 0.0) || !(tol < std::numbers::pi / sqrt_a))
        throw std::invalid_argument("resonance tolerance must lie in (0, pi/sqrt(a))");

    const double ratio = params.h() * sqrt_a / (2.0 * std::numbers::pi);
    const double nearest = std::round(ratio);
    if (nearest != 0.0 && std::abs(nearest) <= std::numeric_limits<int>::max()) {
        const double resonant_h = 2.0 * std::numbers::pi * nearest / sqrt_a;
        if (std::abs(params.h() - resonant_h) <= tol)
            return {FredholmKind::Resonant, static_cast<int>(nearest), std::nullopt};
    }
    return {FredholmKind::NonResonant, std::nullopt, estimate_alpha(params)};
}

FredholmClass classify(const ShiftParams& params) { return classify(params, default_resonance_tol(params)); }

double alpha_search_window(const ShiftParams& params) { return 2.0 * (1.0 + params.sqrt_a()); }

double estimate_alpha(const ShiftParams& params) {
    const double a = params.a();
    const double sqrt_a = params.sqrt_a();
    {
        const double ratio = params.h() * sqrt_a / (2.0 * std::numbers::pi);
        const double nearest = std::round(ratio);
        if (nearest != 0.0 && std::abs(params.h() - 2.0 * std::numbers::pi * nearest / sqrt_a) <=
                                  default_resonance_tol(params))
            throw std::invalid_argument("estimate_alpha: parameters are resonant");
    }

    // |lambda|^2 is even in p, so [0, P] suffices. The step resolves both the
    // quartic scale and the oscillation of cos(ph).
    const double window = alpha_search_window(params);
    constexpr Eigen::Index kMinSamples = 4000;
    constexpr Eigen::Index kMaxSamples = 4'000'000;
    const double period = 2.0 * std::numbers::pi / std::abs(params.h());
    double step = std::min(window / kMinSamples, period / 32.0);
    Eigen::Index count = static_cast<Eigen::Index>(std::ceil(window / step));
    count = std::clamp(count, kMinSamples, kMaxSamples);
    step = window / static_cast<double>(count);

    auto modulus = [&](double p) { return symbol_modulus_sq(p, params); };

    Eigen::ArrayXd samples(count + 1);
    for (Eigen::Index i = 0; i <= count; ++i) samples[i] = modulus(step * static_cast<double>(i));

    double best = samples.minCoeff();
    for (Eigen::Index i = 0; i <= count; ++i) {
        const double left = i > 0 ? samples[i - 1] : samples[i + 1];
        const double right = i < count ? samples[i + 1] : samples[i - 1];
        if (samples[i] > left || samples[i] > right) continue;
        const double lo = step * static_cast<double>(std::max<Eigen::Index>(i - 1, 0));
        const double hi = step * static_cast<double>(std::min(i + 1, count));
        const auto [arg, value] = boost::math::tools::brent_find_minima(modulus, lo, hi, 52);
        (void)arg;
        best = std::min(best, value);
    }

    const double zero_threshold = 1e-14 * a * a;
    if (best < zero_threshold)
        throw NumericalError("estimate_alpha: minimum of |lambda_h|^2 is at machine zero; parameters are resonant "
                             "or within round-off of resonance");

    // Beyond the window (p^2 - a)^2 alone dominates the sampled minimum.
    const double tail = window * window - a;
    if (!(tail * tail > best)) throw std::logic_error("estimate_alpha: search window does not dominate the tail");
    return best;
}

}  // namespace shiftsolve
