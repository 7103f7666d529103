#include "shiftsolve/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace shiftsolve {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const GridFunction& u) {
    os << "x,re,im\n";
    for (Eigen::Index j = 0; j < u.grid.size(); ++j)
        os << format_real(u.grid.x(j)) << ',' << format_real(u.values[j].real()) << ','
           << format_real(u.values[j].imag()) << '\n';
}

void write_csv(const std::string& path, const GridFunction& u) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_csv(os, u);
}

GridFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("CSV: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "x,re,im") throw std::runtime_error("CSV: expected header 'x,re,im', got '" + line + "'");

    std::vector<double> xs;
    std::vector<Complex> vals;
    int row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        std::istringstream ls(line);
        double x, re, im;
        char c1, c2;
        if (!(ls >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',')
            throw std::runtime_error("CSV: malformed row " + std::to_string(row));
        xs.push_back(x);
        vals.emplace_back(re, im);
    }
    if (xs.size() < 2) throw std::runtime_error("CSV: need at least two rows");

    const Grid grid = [&] {
        try {
            return Grid(-xs.front(), static_cast<Eigen::Index>(xs.size()));
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error(std::string("CSV: sample positions do not form a valid grid: ") + e.what());
        }
    }();
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double expected = grid.x(static_cast<Eigen::Index>(j));
        if (std::abs(xs[j] - expected) > 1e-9 * grid.half_length())
            throw std::runtime_error("CSV: sample positions are not the uniform grid on [-L, L) (row " +
                                     std::to_string(j + 2) + ")");
    }
    return {grid, Eigen::Map<Eigen::VectorXcd>(vals.data(), static_cast<Eigen::Index>(vals.size()))};
}

GridFunction read_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open '" + path + "'");
    return read_csv(is);
}

std::string grid_json(const Grid& grid) {
    return nlohmann::json{{"L", grid.half_length()}, {"N", grid.size()}}.dump();
}

Grid grid_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    return make_grid(j.at("L").get<double>(), j.at("N").get<Eigen::Index>());
}

void write_spectrum_csv(std::ostream& os, const ShiftParams& params, double p_min, double p_max, int count) {
    if (count < 2) throw std::invalid_argument("spectrum needs at least two points");
    if (!(p_max > p_min)) throw std::invalid_argument("spectrum needs p_max > p_min");
    os << "p,re_lambda,im_lambda,mod_sq\n";
    for (int i = 0; i < count; ++i) {
        const double p = p_min + (p_max - p_min) * i / (count - 1);
        const Complex lambda = symbol(p, params);
        os << format_real(p) << ',' << format_real(lambda.real()) << ',' << format_real(lambda.imag()) << ','
           << format_real(symbol_modulus_sq(p, params)) << '\n';
    }
}

}  // namespace shiftsolve
