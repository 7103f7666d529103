#pragma once

#include "shiftsolve/grid.hpp"
#include "shiftsolve/shift_operator.hpp"

#include <iosfwd>
#include <string>

namespace shiftsolve {

/// "%.17g"
std::string format_real(double v);

/// CSV with header `x,re,im`, one row per sample, 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& u);
void write_csv(const std::string& path, const GridFunction& u);

/// Reads the `x,re,im` format. The grid is recovered from the sample
/// positions (L = -x_0, N = rows) and the spacing is checked for uniformity.
GridFunction read_csv(std::istream& is);
GridFunction read_csv(const std::string& path);

/// `{ "L": <real>, "N": <int> }`
std::string grid_json(const Grid& grid);
Grid grid_from_json(const std::string& text);

/// CSV `p,re_lambda,im_lambda,mod_sq` on count points spanning [p_min, p_max].
void write_spectrum_csv(std::ostream& os, const ShiftParams& params, double p_min, double p_max, int count);

}  // namespace shiftsolve
