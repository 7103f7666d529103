#include "shiftsolve/config.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace shiftsolve {

using nlohmann::json;

namespace {

const std::map<std::string, double> kDefaultTolerances = {
    {"tol_orth", 1e-8},
    {"tol_h2", 1e-10},
    {"guard", 1e-8},
};

std::set<std::string> allowed_keys(Command c) {
    std::set<std::string> keys = {"command", "a", "h", "seed", "output_dir", "tol_resonance"};
    auto add = [&](std::initializer_list<const char*> more) { keys.insert(more.begin(), more.end()); };
    switch (c) {
        case Command::Spectrum: add({"p_min", "p_max", "p_count"}); break;
        case Command::SolveLinear: add({"L", "N", "f", "tol_orth", "guard"}); break;
        case Command::Constants: add({"L", "N", "G", "tol_orth", "guard", "l"}); break;
        case Command::SolveNonlinear: add({"L", "N", "G", "F", "tol_h2", "max_iter", "v0", "tol_orth", "guard"}); break;
        case Command::Sequence:
            add({"L", "N", "kind", "sequence", "f", "G", "F", "epsilon", "tol_orth", "tol_h2", "max_iter", "guard"});
            break;
    }
    return keys;
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) throw ConfigError(where.empty() ? key : where + "." + key, "unknown key");
}

double number(const json& obj, const std::string& key, const std::string& field) {
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(field, "must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
    return d;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& field) {
    return obj.contains(key) ? number(obj, key, field) : fallback;
}

long integer(const json& obj, const std::string& key, long fallback, const std::string& field) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(field, "must be an integer");
    return v.get<long>();
}

std::string text(const json& obj, const std::string& key, const std::string& field) {
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(field, "must be a string");
    return v.get<std::string>();
}

ParamMap param_map(const json& obj, const std::string& field) {
    if (!obj.is_object()) throw ConfigError(field, "must be an object");
    ParamMap out;
    for (const auto& [key, value] : obj.items()) {
        if (!value.is_number()) throw ConfigError(field + "." + key, "must be a number");
        out[key] = value.get<double>();
    }
    return out;
}

std::string resolve(const std::string& path, const std::string& base_dir) {
    std::filesystem::path p(path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    return p.string();
}

FunctionSource function_source(const json& v, const std::string& field, const std::string& base_dir) {
    FunctionSource src;
    if (v.is_string()) {
        src.csv_path = resolve(v.get<std::string>(), base_dir);
    } else if (v.is_object()) {
        reject_unknown(v, {"builtin", "params", "csv"}, field);
        if (v.contains("csv") == v.contains("builtin"))
            throw ConfigError(field, "needs exactly one of 'builtin' or 'csv'");
        if (v.contains("csv")) {
            if (v.contains("params")) throw ConfigError(field + ".params", "not allowed with 'csv'");
            src.csv_path = resolve(text(v, "csv", field + ".csv"), base_dir);
        } else {
            src.builtin = text(v, "builtin", field + ".builtin");
            if (v.contains("params")) src.params = param_map(v.at("params"), field + ".params");
            try {
                (void)builtin_function(src.builtin, src.params, make_grid(1.0, 8));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(field, e.what());
            }
        }
    } else {
        throw ConfigError(field, "must be a CSV path or an object {\"builtin\", \"params\"}");
    }
    if (src.is_csv() && !std::filesystem::exists(src.csv_path))
        throw ConfigError(field, "file '" + src.csv_path + "' does not exist");
    return src;
}

NonlinearitySpec nonlinearity_spec(const json& v) {
    if (!v.is_object()) throw ConfigError("F", "must be an object");
    reject_unknown(v, {"name", "l", "k", "params"}, "F");
    for (const char* key : {"name", "l", "k"})
        if (!v.contains(key)) throw ConfigError(std::string("F.") + key, "is required");
    NonlinearitySpec spec{text(v, "name", "F.name"), {}, number(v, "k", "F.k"), number(v, "l", "F.l")};
    if (v.contains("params")) spec.params = param_map(v.at("params"), "F.params");
    try {
        (void)builtin_nonlinearity(spec.name, spec.params, spec.k, spec.l);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("F", e.what());
    }
    return spec;
}

std::pair<int, int> line_and_column(const std::string& text, std::size_t byte) {
    int line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

}  // namespace

ConfigError::ConfigError(std::string f, const std::string& what)
    : Error(f.empty() ? what : "config field '" + f + "': " + what), field(std::move(f)) {}

std::string to_string(Command c) {
    switch (c) {
        case Command::Spectrum: return "spectrum";
        case Command::SolveLinear: return "solve-linear";
        case Command::SolveNonlinear: return "solve-nonlinear";
        case Command::Constants: return "constants";
        case Command::Sequence: return "sequence";
    }
    return "unknown";
}

Command command_from_string(const std::string& name) {
    for (Command c : {Command::Spectrum, Command::SolveLinear, Command::SolveNonlinear, Command::Constants,
                      Command::Sequence})
        if (to_string(c) == name) return c;
    throw ConfigError("command", "unknown command '" + name + "'");
}

RunConfig parse_config_text(const std::string& source, std::optional<Command> command, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(source);
    } catch (const json::parse_error& e) {
        const auto [line, column] = line_and_column(source, e.byte);
        throw ConfigError("", "JSON parse error at line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ": " + e.what());
    }
    if (!root.is_object()) throw ConfigError("", "config must be a JSON object");

    if (root.contains("command")) {
        const Command declared = command_from_string(text(root, "command", "command"));
        if (command && *command != declared)
            throw ConfigError("command", "config declares '" + to_string(declared) + "' but '" + to_string(*command) +
                                             "' was requested");
        command = declared;
    }
    if (!command) throw ConfigError("command", "no command given");
    reject_unknown(root, allowed_keys(*command), "");

    for (const char* key : {"a", "h"})
        if (!root.contains(key)) throw ConfigError(key, "is required");
    const double a = number(root, "a", "a");
    const double h = number(root, "h", "h");
    if (!(a > 0.0)) throw ConfigError("a", "must be positive");
    if (h == 0.0) throw ConfigError("h", "must be nonzero (the unshifted operator is not supported)");

    RunConfig cfg{.command = *command, .params = ShiftParams(a, h)};
    cfg.base_dir = base_dir;
    cfg.tolerances = kDefaultTolerances;
    cfg.tolerances["tol_resonance"] = default_resonance_tol(cfg.params);
    for (const char* key : {"tol_orth", "tol_h2", "guard", "tol_resonance"}) {
        if (!root.contains(key)) continue;
        const double v = number(root, key, key);
        if (!(v > 0.0)) throw ConfigError(key, "must be positive");
        cfg.tolerances[key] = v;
    }
    if (!(cfg.tol("tol_resonance") < std::numbers::pi / cfg.params.sqrt_a()))
        throw ConfigError("tol_resonance", "must be below pi/sqrt(a)");

    if (root.contains("seed")) {
        const long seed = integer(root, "seed", 0, "seed");
        if (seed < 0) throw ConfigError("seed", "must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(seed);
    }
    if (root.contains("output_dir")) cfg.output_dir = text(root, "output_dir", "output_dir");

    cfg.L = number_or(root, "L", cfg.L, "L");
    cfg.N = integer(root, "N", cfg.N, "N");
    if (!(cfg.L > 0.0)) throw ConfigError("L", "must be positive");
    if (cfg.N < 8 || cfg.N % 2 != 0) throw ConfigError("N", "must be an even integer >= 8");

    cfg.max_iter = static_cast<int>(integer(root, "max_iter", cfg.max_iter, "max_iter"));
    if (cfg.max_iter < 1) throw ConfigError("max_iter", "must be positive");

    switch (cfg.command) {
        case Command::Spectrum:
            cfg.p_min = number_or(root, "p_min", cfg.p_min, "p_min");
            cfg.p_max = number_or(root, "p_max", cfg.p_max, "p_max");
            cfg.p_count = static_cast<int>(integer(root, "p_count", cfg.p_count, "p_count"));
            if (!(cfg.p_max > cfg.p_min)) throw ConfigError("p_max", "must exceed p_min");
            if (cfg.p_count < 2) throw ConfigError("p_count", "must be at least 2");
            break;
        case Command::SolveLinear:
            if (!root.contains("f")) throw ConfigError("f", "is required");
            cfg.f = function_source(root.at("f"), "f", base_dir);
            break;
        case Command::Constants:
            if (!root.contains("G")) throw ConfigError("G", "is required");
            cfg.G = function_source(root.at("G"), "G", base_dir);
            if (root.contains("l")) {
                const double l = number(root, "l", "l");
                if (l < 0.0) throw ConfigError("l", "must be nonnegative");
                cfg.F = NonlinearitySpec{"zero", {}, 0.0, l};
            }
            break;
        case Command::SolveNonlinear:
            for (const char* key : {"G", "F"})
                if (!root.contains(key)) throw ConfigError(key, "is required");
            cfg.G = function_source(root.at("G"), "G", base_dir);
            cfg.F = nonlinearity_spec(root.at("F"));
            if (root.contains("v0")) {
                const auto& v0 = root.at("v0");
                if (!v0.is_string()) throw ConfigError("v0", "must be \"zero\", \"random\" or a CSV path");
                cfg.v0 = v0.get<std::string>();
                if (cfg.v0 != "zero" && cfg.v0 != "random") {
                    cfg.v0 = resolve(cfg.v0, base_dir);
                    if (!std::filesystem::exists(cfg.v0)) throw ConfigError("v0", "file '" + cfg.v0 + "' does not exist");
                }
            }
            break;
        case Command::Sequence: {
            for (const char* key : {"kind", "sequence"})
                if (!root.contains(key)) throw ConfigError(key, "is required");
            cfg.sequence_kind = text(root, "kind", "kind");
            const auto& seq = root.at("sequence");
            if (!seq.is_object()) throw ConfigError("sequence", "must be an object");
            reject_unknown(seq, {"name", "M", "perturbation"}, "sequence");
            if (!seq.contains("name")) throw ConfigError("sequence.name", "is required");
            cfg.sequence_name = text(seq, "name", "sequence.name");
            static const std::set<std::string> names = {"constant", "scale", "alternate", "add", "truncate"};
            if (!names.contains(cfg.sequence_name)) throw ConfigError("sequence.name", "unknown sequence");
            cfg.M = static_cast<int>(integer(seq, "M", cfg.M, "sequence.M"));
            if (cfg.M < 1) throw ConfigError("sequence.M", "must be positive");
            if (seq.contains("perturbation"))
                cfg.perturbation = function_source(seq.at("perturbation"), "sequence.perturbation", base_dir);
            if (cfg.sequence_name == "add" && !cfg.perturbation)
                throw ConfigError("sequence.perturbation", "is required for 'add'");

            if (cfg.sequence_kind == "rhs") {
                if (!root.contains("f")) throw ConfigError("f", "is required for rhs sequences");
                for (const char* key : {"G", "F", "epsilon"})
                    if (root.contains(key)) throw ConfigError(key, "not allowed for rhs sequences");
                cfg.f = function_source(root.at("f"), "f", base_dir);
            } else if (cfg.sequence_kind == "kernel") {
                for (const char* key : {"G", "F", "epsilon"})
                    if (!root.contains(key)) throw ConfigError(key, "is required for kernel sequences");
                if (root.contains("f")) throw ConfigError("f", "not allowed for kernel sequences");
                cfg.G = function_source(root.at("G"), "G", base_dir);
                cfg.F = nonlinearity_spec(root.at("F"));
                cfg.epsilon = number(root, "epsilon", "epsilon");
                if (!(*cfg.epsilon > 0.0 && *cfg.epsilon < 1.0)) throw ConfigError("epsilon", "must lie in (0, 1)");
            } else {
                throw ConfigError("kind", "must be \"rhs\" or \"kernel\"");
            }
            break;
        }
    }
    return cfg;
}

RunConfig parse_config(const std::string& path, std::optional<Command> command) {
    std::ifstream is(path);
    if (!is) throw ConfigError("", "cannot read config file '" + path + "'");
    std::stringstream buffer;
    buffer << is.rdbuf();
    const auto base = std::filesystem::path(path).parent_path();
    return parse_config_text(buffer.str(), command, base.empty() ? "." : base.string());
}

}  // namespace shiftsolve
