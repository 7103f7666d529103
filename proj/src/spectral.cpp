#include "shiftsolve/spectral.hpp"

#include "shiftsolve/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <iostream>
#include <string>

namespace shiftsolve {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

Eigen::FFT<double> make_fft() {
    Eigen::FFT<double> fft;
    fft.SetFlag(Eigen::FFT<double>::Unscaled);
    return fft;
}

// (-1)^q for the signed frequency index q = k - N/2.
double alternating_sign(Eigen::Index k, Eigen::Index n) {
    return ((k - n / 2) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

Grid::Grid(double half_length, Eigen::Index point_count) : L_(half_length), N_(point_count) {
    if (!(half_length > 0.0) || !std::isfinite(half_length))
        throw std::invalid_argument("grid half length must be positive and finite");
    if (point_count % 2 != 0)
        throw std::invalid_argument("grid point count must be even, got " + std::to_string(point_count));
    if (point_count < 8)
        throw std::invalid_argument("grid point count must be at least 8, got " + std::to_string(point_count));
}

Grid make_grid(double half_length, Eigen::Index point_count) { return Grid(half_length, point_count); }

Eigen::ArrayXd Grid::points() const {
    Eigen::ArrayXd xs(N_);
    for (Eigen::Index j = 0; j < N_; ++j) xs[j] = x(j);
    return xs;
}

Eigen::ArrayXd Grid::frequencies() const {
    Eigen::ArrayXd ps(N_);
    for (Eigen::Index k = 0; k < N_; ++k) ps[k] = p(k);
    return ps;
}

namespace detail {

void require_finite(const Eigen::VectorXcd& values, const char* what) {
    if (!values.allFinite()) throw std::invalid_argument(std::string(what) + " contains NaN or Inf");
}

void require_size(const Grid& grid, const Eigen::VectorXcd& values, const char* what) {
    if (values.size() != grid.size())
        throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(grid.size()) +
                                    " samples, got " + std::to_string(values.size()));
}

}  // namespace detail

void require_same_grid(const Grid& a, const Grid& b) {
    if (!(a == b)) throw GridMismatch("functions live on different grids");
}

GridFunction operator+(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u.grid, v.grid);
    return {u.grid, u.values + v.values};
}

GridFunction operator-(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u.grid, v.grid);
    return {u.grid, u.values - v.values};
}

GridFunction operator*(double c, const GridFunction& u) { return {u.grid, c * u.values}; }
GridFunction operator*(Complex c, const GridFunction& u) { return {u.grid, c * u.values}; }

SpectralFunction forward_transform(const GridFunction& u) {
    const Grid& g = u.grid;
    const Eigen::Index n = g.size();
    auto fft = make_fft();
    Eigen::VectorXcd dft(n);
    fft.fwd(dft, u.values);

    // Storage slot k holds q = k - N/2, which is DFT bin (q mod N); the phase
    // e^{-i p_q x_0} = e^{i pi q} contributes the alternating sign.
    const double scale = g.dx() * kInvSqrt2Pi;
    Eigen::VectorXcd out(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index bin = (k - n / 2 + n) % n;
        out[k] = scale * alternating_sign(k, n) * dft[bin];
    }
    return {g, std::move(out)};
}

GridFunction inverse_transform(const SpectralFunction& uhat) {
    const Grid& g = uhat.grid;
    const Eigen::Index n = g.size();
    Eigen::VectorXcd bins(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index bin = (k - n / 2 + n) % n;
        bins[bin] = alternating_sign(k, n) * uhat.values[k];
    }
    auto fft = make_fft();
    Eigen::VectorXcd out(n);
    fft.inv(out, bins);
    out *= g.dp() * kInvSqrt2Pi;
    return {g, std::move(out)};
}

Complex evaluate_transform_at(const GridFunction& u, double p) {
    const Grid& g = u.grid;
    if (std::abs(p) > g.band_limit() * (1.0 + 1e-12))
        std::clog << "warning: evaluating transform at |p| = " << std::abs(p)
                  << " beyond the resolvable band " << g.band_limit() << '\n';
    Complex sum(0.0, 0.0);
    for (Eigen::Index j = 0; j < g.size(); ++j) sum += u.values[j] * std::polar(1.0, -p * g.x(j));
    return g.dx() * kInvSqrt2Pi * sum;
}

GridFunction apply_multiplier(const GridFunction& u, const Eigen::VectorXcd& factor) {
    SpectralFunction uhat = forward_transform(u);
    uhat.values.array() *= factor.array();
    return inverse_transform(uhat);
}

GridFunction shift(const GridFunction& u, double h) {
    const Grid& g = u.grid;
    Eigen::VectorXcd phase(g.size());
    for (Eigen::Index k = 0; k < g.size(); ++k) phase[k] = std::polar(1.0, -g.p(k) * h);
    return apply_multiplier(u, phase);
}

GridFunction second_derivative(const GridFunction& u) {
    const Eigen::ArrayXd p = u.grid.frequencies();
    return apply_multiplier(u, (-p.square()).cast<Complex>().matrix());
}

double l2_norm(const GridFunction& u) { return std::sqrt(u.grid.dx() * u.values.squaredNorm()); }

double l1_norm(const GridFunction& u) { return u.grid.dx() * u.values.cwiseAbs().sum(); }

double weighted_l1_norm(const GridFunction& u) {
    return u.grid.dx() * (u.grid.points().abs() * u.values.array().abs()).sum();
}

double h2_norm(const GridFunction& u) {
    const double l2 = l2_norm(u);
    const double d2 = l2_norm(second_derivative(u));
    return std::sqrt(l2 * l2 + d2 * d2);
}

double linf_norm(const GridFunction& u) { return u.values.size() ? u.values.cwiseAbs().maxCoeff() : 0.0; }

double l2_norm(const SpectralFunction& uhat) {
    return std::sqrt(uhat.grid.dp() * uhat.values.squaredNorm());
}

double h2_norm(const SpectralFunction& uhat) {
    const Eigen::ArrayXd p2 = uhat.grid.frequencies().square();
    return std::sqrt(uhat.grid.dp() * ((1.0 + p2.square()) * uhat.values.array().abs2()).sum());
}

double linf_norm(const SpectralFunction& uhat) { return uhat.values.cwiseAbs().maxCoeff(); }

}  // namespace shiftsolve
