#pragma once

#include "shiftsolve/builtins.hpp"
#include "shiftsolve/errors.hpp"
#include "shiftsolve/shift_operator.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace shiftsolve {

enum class Command { Spectrum, SolveLinear, SolveNonlinear, Constants, Sequence };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

/// Invalid configuration: malformed JSON (with line/column) or a field that
/// fails validation (named in `field`).
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what);
    const char* kind() const noexcept override { return "ConfigError"; }

    std::string field;
};

/// Either a builtin function with parameters or a CSV file in the `x,re,im` format.
struct FunctionSource {
    std::string builtin;
    ParamMap params;
    std::string csv_path;

    bool is_csv() const { return !csv_path.empty(); }
};

struct NonlinearitySpec {
    std::string name;
    ParamMap params;
    double k = 0.0;
    double l = 0.0;
};

struct RunConfig {
    Command command;
    ShiftParams params;
    double L = 40.0;
    long N = 4096;
    std::optional<FunctionSource> f{};
    std::optional<FunctionSource> G{};
    std::optional<NonlinearitySpec> F{};
    /// tol_orth, tol_h2, tol_resonance (absolute in h), guard
    std::map<std::string, double> tolerances{};
    int max_iter = 500;
    /// "zero", "random" (seeded) or a CSV path.
    std::string v0 = "zero";

    // spectrum
    double p_min = -10.0;
    double p_max = 10.0;
    int p_count = 2001;

    // sequence
    std::string sequence_kind{};  ///< "rhs" or "kernel"
    std::string sequence_name{};
    int M = 12;
    std::optional<double> epsilon{};
    std::optional<FunctionSource> perturbation{};

    std::string output_dir = ".";
    std::uint64_t seed = 0;
    /// Directory the config was read from; relative CSV paths resolve against it.
    std::string base_dir = ".";

    double tol(const std::string& name) const { return tolerances.at(name); }
};

/// Reads and validates a JSON config. Unknown keys are errors. When `command`
/// is given it takes precedence; a "command" key in the file must then agree.
RunConfig parse_config(const std::string& path, std::optional<Command> command = std::nullopt);
RunConfig parse_config_text(const std::string& text, std::optional<Command> command = std::nullopt,
                            const std::string& base_dir = ".");

/// Executes the command, writes its artifacts into output_dir and prints a
/// one-line summary to `out`. Returns 0 on success, 2 when a hypothesis of the
/// problem fails, 1 on any other error. Failures are reported as a JSON
/// object on `out` and in output_dir/error.json.
int run(const RunConfig& config, std::ostream& out);

}  // namespace shiftsolve
