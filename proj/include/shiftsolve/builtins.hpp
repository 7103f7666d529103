#pragma once

#include "shiftsolve/grid.hpp"
#include "shiftsolve/nonlinear_solver.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace shiftsolve {

using ParamMap = std::map<std::string, double>;

/// Builtin functions sampled on a grid. Transforms use the 1/sqrt(2pi) convention.
///
///   gaussian         A exp(-(x-c)^2 / (2 s^2))
///                    params sigma (1), center (0), amplitude (1)
///                    transform A s exp(-s^2 p^2 / 2) exp(-ipc)
///   hermite_gaussian A x^2 exp(-x^2 / (2 s^2))
///                    params scale s (1), amplitude (1)
///                    transform A s^3 (1 - s^2 p^2) exp(-s^2 p^2 / 2); vanishes at
///                    p = +-1/s, so scale = 1/sqrt(a) gives a resonant-orthogonal input
///   sine_packet      A sin(k0 x) exp(-x^2 / (2 s^2))
///                    params sigma (1), k0 (1), amplitude (1)
///                    transform (A s / 2i) (exp(-s^2 (p-k0)^2/2) - exp(-s^2 (p+k0)^2/2))
///   zero             0
GridFunction builtin_function(const std::string& name, const ParamMap& params, const Grid& grid);

/// Closed-form transform of a builtin, where one exists.
std::optional<Complex> builtin_transform(const std::string& name, const ParamMap& params, double p);

/// Builtin nonlinearities. Declared (k, l) come from the caller and are not
/// altered; check_assumptions verifies them.
///
///   tanh_source  F(u,x) = c tanh(u) + A exp(-x^2 / (2 s^2))
///                params coeff c (0.1), amplitude A (1), sigma s (1/sqrt 2)
///                envelope |A| exp(-x^2/(2 s^2)); valid with k >= |c|, l >= |c|
///   tanh         F(u,x) = c tanh(u); F(0,.) = 0
///   source       F(u,x) = A exp(-x^2 / (2 s^2)); l = 0 admissible
///   zero         F = 0
Nonlinearity builtin_nonlinearity(const std::string& name, const ParamMap& params, double k, double l);

std::vector<std::string> builtin_function_names();
std::vector<std::string> builtin_nonlinearity_names();

}  // namespace shiftsolve
