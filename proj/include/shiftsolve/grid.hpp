#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace shiftsolve {

using Complex = std::complex<double>;

/// Uniform periodic grid on [-L, L) with N points, together with its dual
/// frequency grid p_k = pi (k - N/2) / L, k = 0..N-1 (ascending order, the
/// unpaired endpoint -N pi / (2L) first).
class Grid {
public:
    Grid(double half_length, Eigen::Index point_count);

    double half_length() const { return L_; }
    Eigen::Index size() const { return N_; }
    double dx() const { return 2.0 * L_ / static_cast<double>(N_); }
    double dp() const { return std::numbers::pi / L_; }
    /// Largest resolvable |p|, pi / dx.
    double band_limit() const { return std::numbers::pi / dx(); }

    double x(Eigen::Index j) const { return -L_ + static_cast<double>(j) * dx(); }
    double p(Eigen::Index k) const { return dp() * static_cast<double>(k - N_ / 2); }

    Eigen::ArrayXd points() const;
    Eigen::ArrayXd frequencies() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    double L_;
    Eigen::Index N_;
};

/// Validating factory: L > 0, N even, N >= 8.
Grid make_grid(double half_length, Eigen::Index point_count);

namespace detail {
void require_finite(const Eigen::VectorXcd& values, const char* what);
void require_size(const Grid& grid, const Eigen::VectorXcd& values, const char* what);
}  // namespace detail

/// Samples u(x_j) on a grid. Values are complex; real functions carry a zero
/// imaginary part.
struct GridFunction {
    Grid grid;
    Eigen::VectorXcd values;

    GridFunction(Grid g, Eigen::VectorXcd v) : grid(g), values(std::move(v)) {
        detail::require_size(grid, values, "GridFunction");
        detail::require_finite(values, "GridFunction");
    }

    static GridFunction zero(const Grid& g) { return {g, Eigen::VectorXcd::Zero(g.size())}; }

    template <typename Fn>
    static GridFunction sample(const Grid& g, Fn&& fn) {
        Eigen::VectorXcd v(g.size());
        for (Eigen::Index j = 0; j < g.size(); ++j) v[j] = Complex(fn(g.x(j)));
        return {g, std::move(v)};
    }

    Eigen::VectorXd real() const { return values.real(); }
};

/// Samples of u^(p_k) = (1/sqrt(2 pi)) int u(x) e^{-ipx} dx on the dual grid.
struct SpectralFunction {
    Grid grid;
    Eigen::VectorXcd values;

    SpectralFunction(Grid g, Eigen::VectorXcd v) : grid(g), values(std::move(v)) {
        detail::require_size(grid, values, "SpectralFunction");
        detail::require_finite(values, "SpectralFunction");
    }

    template <typename Fn>
    static SpectralFunction sample(const Grid& g, Fn&& fn) {
        Eigen::VectorXcd v(g.size());
        for (Eigen::Index k = 0; k < g.size(); ++k) v[k] = Complex(fn(g.p(k)));
        return {g, std::move(v)};
    }
};

void require_same_grid(const Grid& a, const Grid& b);

GridFunction operator+(const GridFunction& u, const GridFunction& v);
GridFunction operator-(const GridFunction& u, const GridFunction& v);
GridFunction operator*(double c, const GridFunction& u);
GridFunction operator*(Complex c, const GridFunction& u);

}  // namespace shiftsolve
