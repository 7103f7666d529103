#include "shiftsolve/config.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Spectral solver for -u'' - a u(x-h) = f and its nonlocal nonlinear counterpart"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::int64_t seed = -1;
    app.add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory (overrides output_dir)");
    app.add_option("--seed", seed, "seed for randomized steps (overrides seed)")->check(CLI::NonNegativeNumber);
    app.fallthrough();

    for (const char* name : {"spectrum", "solve-linear", "solve-nonlinear", "constants", "sequence"})
        app.add_subcommand(name);

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    shiftsolve::RunConfig config = [&] {
        try {
            return shiftsolve::parse_config(config_path, shiftsolve::command_from_string(name));
        } catch (const shiftsolve::ConfigError& e) {
            const nlohmann::json err{{"error", e.kind()},
                                     {"message", e.what()},
                                     {"exit_code", 1},
                                     {"seed", seed < 0 ? 0 : seed},
                                     {"command", name},
                                     {"details", {{"field", e.field}}}};
            std::cout << err.dump() << '\n';
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::ofstream(std::filesystem::path(out_dir) / "error.json") << err.dump(2) << '\n';
            }
            std::exit(1);
        }
    }();
    if (!out_dir.empty()) config.output_dir = out_dir;
    if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
    return shiftsolve::run(config, std::cout);
}
