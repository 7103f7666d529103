#pragma once

#include "shiftsolve/grid.hpp"

namespace shiftsolve {

/// u^(p_k) = (dx / sqrt(2 pi)) sum_j u(x_j) e^{-i p_k x_j}, evaluated with an FFT.
SpectralFunction forward_transform(const GridFunction& u);

/// Exact inverse of forward_transform:
/// u(x_j) = (dp / sqrt(2 pi)) sum_k u^(p_k) e^{i p_k x_j}.
GridFunction inverse_transform(const SpectralFunction& uhat);

/// Trapezoidal quadrature of (1/sqrt(2 pi)) int_{-L}^{L} u(x) e^{-ipx} dx at an
/// arbitrary real p. Coincides with forward_transform on grid frequencies.
/// Writes a warning to std::clog when |p| exceeds the resolvable band.
Complex evaluate_transform_at(const GridFunction& u, double p);

/// Periodic translation u(x - h), done as multiplication by e^{-iph}.
GridFunction shift(const GridFunction& u, double h);

/// u'' computed as the inverse transform of -p^2 u^.
GridFunction second_derivative(const GridFunction& u);

/// Multiply the transform by a per-frequency factor and transform back.
GridFunction apply_multiplier(const GridFunction& u, const Eigen::VectorXcd& factor);

double l2_norm(const GridFunction& u);
double l1_norm(const GridFunction& u);
/// || x u(x) ||_{L^1}
double weighted_l1_norm(const GridFunction& u);
/// sqrt(||u||^2 + ||u''||^2)
double h2_norm(const GridFunction& u);
double linf_norm(const GridFunction& u);

/// sqrt(dp sum |u^|^2); equals l2_norm of the inverse transform (Parseval).
double l2_norm(const SpectralFunction& uhat);
/// H^2 norm evaluated on the transform: sqrt(dp sum (1 + p^4) |u^|^2).
double h2_norm(const SpectralFunction& uhat);
double linf_norm(const SpectralFunction& uhat);

}  // namespace shiftsolve
