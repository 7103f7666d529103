#pragma once

#include "shiftsolve/grid.hpp"

#include <random>
#include <vector>

namespace testing_support {

// Sum of a few random Gaussian bumps, optionally modulated; smooth and
// decaying well inside [-L, L).
inline shiftsolve::GridFunction random_smooth(const shiftsolve::Grid& g, std::mt19937_64& rng, bool complex_valued = false) {
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::uniform_real_distribution<double> centre(-5.0, 5.0);
    std::uniform_real_distribution<double> width(0.6, 2.0);
    std::uniform_real_distribution<double> freq(-2.0, 2.0);
    struct Bump {
        shiftsolve::Complex c;
        double x0, s, k;
    };
    std::vector<Bump> bumps(4);
    for (auto& b : bumps)
        b = {{coeff(rng), complex_valued ? coeff(rng) : 0.0}, centre(rng), width(rng), complex_valued ? freq(rng) : 0.0};
    return shiftsolve::GridFunction::sample(g, [&](double x) {
        shiftsolve::Complex v = 0.0;
        for (const auto& b : bumps)
            v += b.c * std::exp(-(x - b.x0) * (x - b.x0) / (2.0 * b.s * b.s)) * std::polar(1.0, b.k * x);
        return v;
    });
}

}  // namespace testing_support
