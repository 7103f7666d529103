#include "shiftsolve/builtins.hpp"

#include <numbers>
#include <set>
#include <stdexcept>

namespace shiftsolve {

namespace {

class Params {
public:
    Params(const std::string& owner, const ParamMap& values, std::set<std::string> allowed)
        : owner_(owner), values_(values) {
        for (const auto& [key, value] : values) {
            if (!allowed.contains(key))
                throw std::invalid_argument(owner + ": unknown parameter '" + key + "'");
            if (!std::isfinite(value)) throw std::invalid_argument(owner + ": parameter '" + key + "' is not finite");
        }
    }

    double get(const std::string& key, double fallback) const {
        const auto it = values_.find(key);
        return it == values_.end() ? fallback : it->second;
    }

    double positive(const std::string& key, double fallback) const {
        const double v = get(key, fallback);
        if (!(v > 0.0)) throw std::invalid_argument(owner_ + ": parameter '" + key + "' must be positive");
        return v;
    }

private:
    std::string owner_;
    const ParamMap& values_;
};

}  // namespace

GridFunction builtin_function(const std::string& name, const ParamMap& params, const Grid& grid) {
    if (name == "gaussian") {
        const Params p(name, params, {"sigma", "center", "amplitude"});
        const double s = p.positive("sigma", 1.0), c = p.get("center", 0.0), A = p.get("amplitude", 1.0);
        return GridFunction::sample(grid, [=](double x) { return A * std::exp(-(x - c) * (x - c) / (2.0 * s * s)); });
    }
    if (name == "hermite_gaussian") {
        const Params p(name, params, {"scale", "amplitude"});
        const double s = p.positive("scale", 1.0), A = p.get("amplitude", 1.0);
        return GridFunction::sample(grid, [=](double x) { return A * x * x * std::exp(-x * x / (2.0 * s * s)); });
    }
    if (name == "sine_packet") {
        const Params p(name, params, {"sigma", "k0", "amplitude"});
        const double s = p.positive("sigma", 1.0), k0 = p.get("k0", 1.0), A = p.get("amplitude", 1.0);
        return GridFunction::sample(grid, [=](double x) { return A * std::sin(k0 * x) * std::exp(-x * x / (2.0 * s * s)); });
    }
    if (name == "zero") {
        const Params p(name, params, {});
        return GridFunction::zero(grid);
    }
    throw std::invalid_argument("unknown builtin function '" + name + "'");
}

std::optional<Complex> builtin_transform(const std::string& name, const ParamMap& params, double p) {
    auto get = [&](const char* key, double fallback) {
        const auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "gaussian") {
        const double s = get("sigma", 1.0), c = get("center", 0.0), A = get("amplitude", 1.0);
        return A * s * std::exp(-s * s * p * p / 2.0) * std::polar(1.0, -p * c);
    }
    if (name == "hermite_gaussian") {
        const double s = get("scale", 1.0), A = get("amplitude", 1.0);
        return Complex(A * s * s * s * (1.0 - s * s * p * p) * std::exp(-s * s * p * p / 2.0));
    }
    if (name == "sine_packet") {
        const double s = get("sigma", 1.0), k0 = get("k0", 1.0), A = get("amplitude", 1.0);
        const double diff = std::exp(-s * s * (p - k0) * (p - k0) / 2.0) - std::exp(-s * s * (p + k0) * (p + k0) / 2.0);
        return A * s / 2.0 * diff / Complex(0.0, 1.0);
    }
    if (name == "zero") return Complex(0.0);
    return std::nullopt;
}

Nonlinearity builtin_nonlinearity(const std::string& name, const ParamMap& params, double k, double l) {
    if (!(k >= 0.0) || !(l >= 0.0)) throw std::invalid_argument("nonlinearity constants k and l must be nonnegative");
    if (name == "tanh_source" || name == "tanh" || name == "source") {
        std::set<std::string> allowed;
        if (name != "source") allowed.insert("coeff");
        if (name != "tanh") allowed.insert({"amplitude", "sigma"});
        const Params p(name, params, allowed);
        const double c = name == "source" ? 0.0 : p.get("coeff", 0.1);
        const double A = name == "tanh" ? 0.0 : p.get("amplitude", 1.0);
        const double s = name == "tanh" ? 1.0 : p.positive("sigma", 1.0 / std::numbers::sqrt2);
        auto bump = [A, s](double x) { return A * std::exp(-x * x / (2.0 * s * s)); };
        return {name, [c, bump](double u, double x) { return c * std::tanh(u) + bump(x); }, k,
                [bump](double x) { return std::abs(bump(x)); }, l};
    }
    if (name == "zero") {
        const Params p(name, params, {});
        return {name, [](double, double) { return 0.0; }, k, [](double) { return 0.0; }, l};
    }
    throw std::invalid_argument("unknown builtin nonlinearity '" + name + "'");
}

std::vector<std::string> builtin_function_names() { return {"gaussian", "hermite_gaussian", "sine_packet", "zero"}; }

std::vector<std::string> builtin_nonlinearity_names() { return {"tanh_source", "tanh", "source", "zero"}; }

}  // namespace shiftsolve
