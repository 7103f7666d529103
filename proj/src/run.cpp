#include "shiftsolve/config.hpp"
#include "shiftsolve/io.hpp"
#include "shiftsolve/kernel_analysis.hpp"
#include "shiftsolve/linear_solver.hpp"
#include "shiftsolve/nonlinear_solver.hpp"
#include "shiftsolve/sequence_harness.hpp"
#include "shiftsolve/spectral.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>

namespace shiftsolve {

using nlohmann::json;

namespace {

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json class_json(const FredholmClass& cls) {
    json j{{"class", cls.resonant() ? "Resonant" : "NonResonant"}, {"n", nullptr}, {"alpha", nullptr}};
    if (cls.n) j["n"] = *cls.n;
    if (cls.alpha) j["alpha"] = *cls.alpha;
    return j;
}

json grid_object(const Grid& g) { return {{"L", g.half_length()}, {"N", g.size()}}; }

json params_object(const ShiftParams& p) { return {{"a", p.a()}, {"h", p.h()}}; }

json kernel_json(const KernelReport& r) {
    json j = class_json(r.cls);
    j.update({{"N", r.finite ? json(r.N) : json(nullptr)},
              {"sup1", r.sup1},
              {"sup2", r.sup2},
              {"finite", r.finite},
              {"ghat_plus", complex_json(r.ghat_plus)},
              {"ghat_minus", complex_json(r.ghat_minus)},
              {"l1_norm_G", r.l1_norm_G},
              {"weighted_l1_G", r.weighted_l1_G},
              {"ghat_sup", r.ghat_sup},
              {"singular_cap", r.singular_cap},
              {"tail_max", r.tail_max},
              {"tail_ok", r.tail_ok},
              {"identity_ok", r.identity_ok},
              {"tolerance_used", r.tolerance_used}});
    return j;
}

class Context {
public:
    explicit Context(const RunConfig& c) : cfg(c), dir(c.output_dir) { std::filesystem::create_directories(dir); }

    Grid grid() const { return make_grid(cfg.L, cfg.N); }

    GridFunction load(const FunctionSource& src, const std::string& field) const {
        const Grid g = grid();
        if (!src.is_csv()) return builtin_function(src.builtin, src.params, g);
        GridFunction u = read_csv(src.csv_path);
        if (!(u.grid == g))
            throw GridMismatch(field + ": CSV grid (L=" + format_real(u.grid.half_length()) +
                               ", N=" + std::to_string(u.grid.size()) + ") differs from the configured grid");
        return u;
    }

    Nonlinearity nonlinearity() const {
        const auto& s = *cfg.F;
        return builtin_nonlinearity(s.name, s.params, s.k, s.l);
    }

    StabilityOptions stability() const {
        StabilityOptions o;
        o.tol_orth = cfg.tol("tol_orth");
        o.resonance_tol = cfg.tol("tol_resonance");
        o.guard = cfg.tol("guard");
        return o;
    }

    json base() const {
        return {{"command", to_string(cfg.command)}, {"seed", cfg.seed}, {"params", params_object(cfg.params)}};
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    void write_json(const std::string& name, const json& j) const {
        std::ofstream os(path(name));
        if (!os) throw std::runtime_error("cannot open '" + path(name) + "' for writing");
        os << j.dump(2) << '\n';
    }

    const RunConfig& cfg;
    std::filesystem::path dir;
};

int run_spectrum(const Context& ctx, std::ostream& out) {
    const auto& cfg = ctx.cfg;
    {
        std::ofstream os(ctx.path("spectrum.csv"));
        if (!os) throw std::runtime_error("cannot open '" + ctx.path("spectrum.csv") + "' for writing");
        write_spectrum_csv(os, cfg.params, cfg.p_min, cfg.p_max, cfg.p_count);
    }
    const FredholmClass cls = classify(cfg.params, cfg.tol("tol_resonance"));
    json j = ctx.base();
    j.update(class_json(cls));
    j.update({{"p_min", cfg.p_min}, {"p_max", cfg.p_max}, {"p_count", cfg.p_count}, {"csv", "spectrum.csv"}});
    ctx.write_json("spectrum.json", j);
    out << "spectrum: " << j["class"].get<std::string>() << ", " << cfg.p_count << " points written to "
        << ctx.path("spectrum.csv") << '\n';
    return 0;
}

int run_solve_linear(const Context& ctx, std::ostream& out) {
    const auto& cfg = ctx.cfg;
    const GridFunction f = ctx.load(*cfg.f, "f");
    LinearSolveOptions opts;
    opts.tol_orth = cfg.tol("tol_orth");
    opts.resonance_tol = cfg.tol("tol_resonance");
    opts.guard = cfg.tol("guard");
    const LinearSolveResult r = solve_linear(f, cfg.params, opts);
    write_csv(ctx.path("solution.csv"), r.u);

    json j = ctx.base();
    j.update(class_json(r.solvability.cls));
    j.update({{"solvable", r.solvability.solvable},
              {"fhat_plus", complex_json(r.solvability.fhat_plus)},
              {"fhat_minus", complex_json(r.solvability.fhat_minus)},
              {"weighted_l1", r.solvability.weighted_l1},
              {"tolerance_used", r.solvability.tolerance_used},
              {"residual_l2", r.residual_l2},
              {"h2_norm", r.h2_norm_u},
              {"zeroed_bins", r.zeroed_bins},
              {"grid", grid_object(r.u.grid)}});
    ctx.write_json("report.json", j);
    out << "solve-linear: " << j["class"].get<std::string>() << ", residual_l2=" << format_real(r.residual_l2)
        << ", h2_norm=" << format_real(r.h2_norm_u) << '\n';
    return 0;
}

int run_constants(const Context& ctx, std::ostream& out) {
    const auto& cfg = ctx.cfg;
    const GridFunction G = ctx.load(*cfg.G, "G");
    const KernelReport r = stability_constant(G, cfg.params, ctx.stability());
    json j = ctx.base();
    j.update(kernel_json(r));
    j["grid"] = grid_object(G.grid);
    if (cfg.F && r.finite) {
        j["l"] = cfg.F->l;
        j["contraction_constant"] = contraction_constant(r.N, cfg.F->l);
        j["contraction_margin"] = contraction_margin(r.N, cfg.F->l);
    }
    ctx.write_json("constants.json", j);
    require_finite(r);
    out << "constants: " << j["class"].get<std::string>() << ", N=" << format_real(r.N) << '\n';
    return 0;
}

GridFunction initial_guess(const Context& ctx) {
    const auto& cfg = ctx.cfg;
    const Grid g = ctx.grid();
    if (cfg.v0 == "zero") return GridFunction::zero(g);
    if (cfg.v0 == "random") {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> coeff(-1.0, 1.0);
        std::uniform_real_distribution<double> centre(-g.half_length() / 4.0, g.half_length() / 4.0);
        std::vector<std::pair<double, double>> bumps(8);
        for (auto& [c, x0] : bumps) {
            c = coeff(rng);
            x0 = centre(rng);
        }
        return GridFunction::sample(g, [&](double x) {
            double v = 0.0;
            for (const auto& [c, x0] : bumps) v += c * std::exp(-(x - x0) * (x - x0) / 2.0);
            return v;
        });
    }
    FunctionSource src;
    src.csv_path = cfg.v0;
    return ctx.load(src, "v0");
}

int run_solve_nonlinear(const Context& ctx, std::ostream& out) {
    const auto& cfg = ctx.cfg;
    const GridFunction G = ctx.load(*cfg.G, "G");
    const Nonlinearity F = ctx.nonlinearity();
    const AssumptionCheck check = check_assumptions(F, G.grid, cfg.seed);
    if (!check.growth_ok || !check.lipschitz_ok)
        throw HypothesisError("declared constants of F do not hold: worst growth excess " +
                              format_real(check.worst_growth_excess) + ", worst Lipschitz ratio " +
                              format_real(check.worst_lipschitz_ratio) + " (declared l=" + format_real(F.l) + ")");

    FixedPointOptions opts;
    opts.v0 = initial_guess(ctx);
    opts.tol_h2 = cfg.tol("tol_h2");
    opts.max_iter = cfg.max_iter;
    opts.stability = ctx.stability();
    const FixedPointResult r = fixed_point_solve(G, F, cfg.params, opts);
    const NontrivialityReport nt = nontriviality_check(G, F, G.grid);
    write_csv(ctx.path("solution.csv"), r.u);

    json j = ctx.base();
    j.update(class_json(r.kernel.cls));
    j.update({{"iterations", r.iterations},
              {"step_norms", r.step_norms},
              {"observed_ratio", r.observed_ratio},
              {"q_bound", r.q_bound},
              {"a_priori_iterations", r.a_priori_iterations},
              {"residual_l2", r.residual_l2},
              {"h2_norm", h2_norm(r.u)},
              {"nontrivial", r.nontrivial},
              {"support_overlap", {{"bins", nt.overlap_bins}, {"measure", nt.overlap_measure}, {"nontrivial", nt.nontrivial}}},
              {"kernel", kernel_json(r.kernel)},
              {"assumptions", {{"worst_growth_excess", check.worst_growth_excess},
                               {"worst_lipschitz_ratio", check.worst_lipschitz_ratio}}},
              {"grid", grid_object(r.u.grid)}});
    ctx.write_json("report.json", j);
    out << "solve-nonlinear: " << r.iterations << " iterations, q=" << format_real(r.q_bound)
        << ", residual_l2=" << format_real(r.residual_l2) << '\n';
    return 0;
}

int run_sequence(const Context& ctx, std::ostream& out) {
    const auto& cfg = ctx.cfg;
    const bool kernel = cfg.sequence_kind == "kernel";
    const SequenceKind kind = kernel ? SequenceKind::KernelSequence : SequenceKind::RhsSequence;
    const GridFunction limit = ctx.load(kernel ? *cfg.G : *cfg.f, kernel ? "G" : "f");
    std::optional<GridFunction> perturbation;
    if (cfg.perturbation) perturbation = ctx.load(*cfg.perturbation, "sequence.perturbation");
    const SequenceSpec spec = builtin_sequence(cfg.sequence_name, kind, limit, cfg.params, cfg.M, perturbation,
                                               cfg.epsilon.value_or(0.5));

    SequenceOptions opts;
    opts.tol_orth = cfg.tol("tol_orth");
    opts.resonance_tol = cfg.tol("tol_resonance");
    opts.tol_h2 = cfg.tol("tol_h2");
    opts.max_iter = cfg.max_iter;
    const ConvergenceTable table =
        kernel ? run_kernel_sequence(spec, ctx.nonlinearity(), cfg.params, opts) : run_linear_sequence(spec, cfg.params, opts);

    {
        std::ofstream os(ctx.path("table.csv"));
        if (!os) throw std::runtime_error("cannot open '" + ctx.path("table.csv") + "' for writing");
        os << "m,input_gap,weighted_gap,solution_gap_h2,multiplier_gap,N_m\n";
        for (const auto& row : table.rows)
            os << row.m << ',' << format_real(row.input_gap) << ',' << format_real(row.weighted_gap) << ','
               << format_real(row.solution_gap_h2) << ',' << format_real(row.multiplier_gap) << ','
               << format_real(row.N_m) << '\n';
    }

    json checks = json::array();
    for (const auto& c : table.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}});
    json j = ctx.base();
    j.update(class_json(table.cls));
    j.update({{"kind", cfg.sequence_kind},
              {"sequence", cfg.sequence_name},
              {"M", cfg.M},
              {"rows", table.rows.size()},
              {"checks", checks},
              {"all_passed", table.all_passed()},
              {"grid", grid_object(limit.grid)}});
    if (kernel) {
        j["N_limit"] = table.N_limit;
        j["epsilon"] = cfg.epsilon.value_or(0.5);
    }
    ctx.write_json("summary.json", j);

    int failed = 0;
    for (const auto& c : table.checks) failed += c.passed ? 0 : 1;
    out << "sequence: " << cfg.sequence_kind << '/' << cfg.sequence_name << ", " << table.rows.size() << " rows, "
        << table.checks.size() - failed << '/' << table.checks.size() << " bounds passed\n";
    if (failed > 0) throw NumericalError(std::to_string(failed) + " asserted bound(s) failed; see summary.json");
    return 0;
}

json error_object(const std::string& kind, const std::string& message, int exit_code, std::uint64_t seed,
                  json details) {
    return {{"error", kind}, {"message", message}, {"exit_code", exit_code}, {"seed", seed}, {"details", details}};
}

json error_details(const Error& e) {
    json d = json::object();
    if (auto* r = dynamic_cast<const ResonantNotSolvable*>(&e)) {
        json violated = json::array();
        if (std::abs(r->fhat_plus) > r->tolerance) violated.push_back("fhat(+sqrt(a)) = 0");
        if (std::abs(r->fhat_minus) > r->tolerance) violated.push_back("fhat(-sqrt(a)) = 0");
        d = {{"fhat_plus", complex_json(r->fhat_plus)},
             {"fhat_minus", complex_json(r->fhat_minus)},
             {"abs_fhat_plus", std::abs(r->fhat_plus)},
             {"abs_fhat_minus", std::abs(r->fhat_minus)},
             {"tolerance", r->tolerance},
             {"violated", violated}};
    } else if (auto* n = dynamic_cast<const NotFinite*>(&e)) {
        json violated = json::array();
        if (std::abs(n->ghat_plus) > n->tolerance) violated.push_back("Ghat(+sqrt(a)) = 0");
        if (std::abs(n->ghat_minus) > n->tolerance) violated.push_back("Ghat(-sqrt(a)) = 0");
        d = {{"ghat_plus", complex_json(n->ghat_plus)},
             {"ghat_minus", complex_json(n->ghat_minus)},
             {"tolerance", n->tolerance},
             {"violated", violated}};
    } else if (auto* c = dynamic_cast<const ContractionHypothesisFailed*>(&e)) {
        d = {{"q", c->q}, {"limit", c->limit}, {"violated", json::array({"2 sqrt(pi) N l < limit"})}};
    } else if (auto* s = dynamic_cast<const SequenceMemberInvalid*>(&e)) {
        d = {{"member", s->member}};
    } else if (auto* m = dynamic_cast<const MaxIterExceeded*>(&e)) {
        d = {{"iterations", m->iterations}, {"last_step", m->last_step}};
    } else if (auto* ce = dynamic_cast<const ConfigError*>(&e)) {
        d = {{"field", ce->field}};
    }
    return d;
}

}  // namespace

int run(const RunConfig& config, std::ostream& out) {
    int code = 1;
    json err;
    try {
        const Context ctx(config);
        try {
            switch (config.command) {
                case Command::Spectrum: return run_spectrum(ctx, out);
                case Command::SolveLinear: return run_solve_linear(ctx, out);
                case Command::Constants: return run_constants(ctx, out);
                case Command::SolveNonlinear: return run_solve_nonlinear(ctx, out);
                case Command::Sequence: return run_sequence(ctx, out);
            }
            throw std::logic_error("unhandled command");
        } catch (const Error& e) {
            code = dynamic_cast<const HypothesisError*>(&e) ? 2 : 1;
            err = error_object(e.kind(), e.what(), code, config.seed, error_details(e));
        } catch (const std::exception& e) {
            err = error_object("InternalError", e.what(), 1, config.seed, json::object());
        }
        err["command"] = to_string(config.command);
        ctx.write_json("error.json", err);
    } catch (const std::exception& e) {
        if (err.is_null()) err = error_object("InternalError", e.what(), 1, config.seed, json::object());
    }
    out << err.dump() << '\n';
    return code;
}

}  // namespace shiftsolve
