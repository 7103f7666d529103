#include "shiftsolve/sequence_harness.hpp"

#include "shiftsolve/errors.hpp"
#include "shiftsolve/linear_solver.hpp"
#include "shiftsolve/spectral.hpp"

#include <algorithm>

namespace shiftsolve {

namespace {

FredholmClass classify_with(const ShiftParams& params, const std::optional<double>& tol) {
    return tol ? classify(params, *tol) : classify(params);
}

// Tracks the worst lhs/rhs ratio of an inequality lhs <= rhs over all rows.
class RatioCheck {
public:
    explicit RatioCheck(std::string name) : name_(std::move(name)) {}

    void add(double lhs, double rhs) {
        if (lhs > rhs) passed_ = false;
        if (rhs > 0.0) worst_ = std::max(worst_, lhs / rhs);
        else if (lhs > 0.0) worst_ = std::numeric_limits<double>::max();
    }

    BoundCheck result() const { return {name_, passed_, worst_}; }

private:
    std::string name_;
    bool passed_ = true;
    double worst_ = 0.0;
};

// `floor` is the solution gap that solver accuracy alone can produce; the rate
// check compares the decrease of the gap above that floor.
void add_trend_checks(ConvergenceTable& table, double floor) {
    if (table.rows.empty()) return;
    const ConvergenceRow& first = table.rows.front();
    const ConvergenceRow& last = table.rows.back();

    RatioCheck decrease("solution_gap_net_decrease");
    decrease.add(last.solution_gap_h2, first.solution_gap_h2);
    table.checks.push_back(decrease.result());

    RatioCheck rate("solution_gap_rate_vs_input_gap");
    if (first.solution_gap_h2 > 0.0 && first.input_gap > 0.0)
        rate.add(last.solution_gap_h2 / first.solution_gap_h2,
                 (10.0 * last.input_gap / first.input_gap) + floor / first.solution_gap_h2);
    table.checks.push_back(rate.result());

    bool finite = true;
    for (const auto& r : table.rows)
        for (double v : {r.input_gap, r.weighted_gap, r.solution_gap_h2, r.multiplier_gap, r.N_m})
            if (!std::isfinite(v) || v < 0.0) finite = false;
    table.checks.push_back({"entries_finite_nonnegative", finite, finite ? 0.0 : 1.0});
}

}  // namespace

bool ConvergenceTable::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.passed; });
}

ConvergenceTable run_linear_sequence(const SequenceSpec& spec, const ShiftParams& params,
                                     const SequenceOptions& opts) {
    if (spec.kind != SequenceKind::RhsSequence) throw std::invalid_argument("run_linear_sequence needs an RhsSequence");
    const LinearSolveOptions solve_opts{.tol_orth = opts.tol_orth, .resonance_tol = opts.resonance_tol};
    ConvergenceTable table{spec.kind, classify_with(params, opts.resonance_tol), {}, 0.0, {}};
    const bool resonant = table.cls.resonant();

    // Members are validated before anything is solved: the hypotheses are per-m.
    std::vector<GridFunction> members;
    members.reserve(static_cast<std::size_t>(spec.M));
    for (int m = 1; m <= spec.M; ++m) {
        GridFunction fm = spec.generator(m);
        require_same_grid(fm.grid, spec.limit.grid);
        if (resonant) {
            const auto report = check_solvability(fm, params, opts.tol_orth, opts.resonance_tol);
            if (!report.solvable)
                throw SequenceMemberInvalid(m, "orthogonality conditions violated (|f^(+sqrt a)| = " +
                                                   std::to_string(std::abs(report.fhat_plus)) + ")");
        }
        members.push_back(std::move(fm));
    }

    const auto limit = solve_linear(spec.limit, params, solve_opts);
    const GridFunction limit_d2 = second_derivative(limit.u);

    RatioCheck l2_bound("l2_gap_le_input_gap_over_sqrt_alpha");
    RatioCheck d2_bound("second_derivative_gap_bound");
    for (int m = 1; m <= spec.M; ++m) {
        const GridFunction& fm = members[static_cast<std::size_t>(m - 1)];
        const auto sol = solve_linear(fm, params, solve_opts);
        const GridFunction df = fm - spec.limit;
        const GridFunction du = sol.u - limit.u;
        ConvergenceRow row{};
        row.m = m;
        row.input_gap = l2_norm(df);
        row.weighted_gap = weighted_l1_norm(df);
        row.solution_gap_l2 = l2_norm(du);
        row.second_derivative_gap = l2_norm(second_derivative(sol.u) - limit_d2);
        row.solution_gap_h2 = std::hypot(row.solution_gap_l2, row.second_derivative_gap);
        if (!resonant)
            l2_bound.add(row.solution_gap_l2, row.input_gap / std::sqrt(*table.cls.alpha) * 1.1);
        d2_bound.add(row.second_derivative_gap, params.a() * row.solution_gap_l2 + row.input_gap + 1e-9);
        table.rows.push_back(row);
    }
    if (!resonant) table.checks.push_back(l2_bound.result());
    table.checks.push_back(d2_bound.result());
    if (resonant) {
        RatioCheck weighted("weighted_gap_net_decrease");
        weighted.add(table.rows.back().weighted_gap, table.rows.front().weighted_gap);
        table.checks.push_back(weighted.result());
    }
    add_trend_checks(table, 1e-10 * limit.h2_norm_u);
    return table;
}

ConvergenceTable run_kernel_sequence(const SequenceSpec& spec, const Nonlinearity& F, const ShiftParams& params,
                                     const SequenceOptions& opts) {
    if (spec.kind != SequenceKind::KernelSequence)
        throw std::invalid_argument("run_kernel_sequence needs a KernelSequence");
    if (!(spec.epsilon > 0.0 && spec.epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");

    StabilityOptions stab{.tol_orth = opts.tol_orth, .resonance_tol = opts.resonance_tol};
    FixedPointOptions fp{.v0 = std::nullopt, .tol_h2 = opts.tol_h2, .max_iter = opts.max_iter, .stability = stab};
    ConvergenceTable table{spec.kind, classify_with(params, opts.resonance_tol), {}, 0.0, {}};
    const bool resonant = table.cls.resonant();
    const double limit_q_max = 1.0 - spec.epsilon;

    std::vector<GridFunction> members;
    std::vector<KernelReport> reports;
    for (int m = 1; m <= spec.M; ++m) {
        GridFunction Gm = spec.generator(m);
        require_same_grid(Gm.grid, spec.limit.grid);
        KernelReport rep = stability_constant(Gm, params, stab);
        if (!rep.finite) throw SequenceMemberInvalid(m, "kernel orthogonality conditions violated");
        const double qm = contraction_constant(rep.N, F.l);
        if (qm > limit_q_max)
            throw SequenceMemberInvalid(m, "uniform contraction slack violated: 2 sqrt(pi) N_m l = " +
                                               std::to_string(qm) + " > 1 - epsilon");
        members.push_back(std::move(Gm));
        reports.push_back(rep);
    }

    const auto limit = fixed_point_solve(spec.limit, F, params, fp);
    table.N_limit = limit.kernel.N;
    const GridFunction limit_d2 = second_derivative(limit.u);
    const KernelMultipliers limit_mult = kernel_multipliers(spec.limit, params, resonant);

    RatioCheck n_bound("N_gap_le_kernel_gap_over_sqrt_2pi_alpha");
    RatioCheck mult_bound("multiplier_gap_le_kernel_gap_over_sqrt_2pi_alpha");
    RatioCheck triangle("weighted_multiplier_triangle");
    RatioCheck orth_limit("limit_orthogonality_emerges");
    for (int m = 1; m <= spec.M; ++m) {
        const GridFunction& Gm = members[static_cast<std::size_t>(m - 1)];
        const KernelReport& rep = reports[static_cast<std::size_t>(m - 1)];
        const auto sol = fixed_point_solve(Gm, F, params, fp);
        const KernelMultipliers mult = kernel_multipliers(Gm, params, resonant);
        const GridFunction dG = Gm - spec.limit;
        const GridFunction du = sol.u - limit.u;

        ConvergenceRow row{};
        row.m = m;
        row.input_gap = l1_norm(dG);
        row.weighted_gap = weighted_l1_norm(dG);
        row.solution_gap_l2 = l2_norm(du);
        row.second_derivative_gap = l2_norm(second_derivative(sol.u) - limit_d2);
        row.solution_gap_h2 = std::hypot(row.solution_gap_l2, row.second_derivative_gap);
        row.multiplier_gap = (mult.plain - limit_mult.plain).cwiseAbs().maxCoeff();
        row.weighted_multiplier_gap = (mult.weighted - limit_mult.weighted).cwiseAbs().maxCoeff();
        row.ghat_gap = (mult.ghat - limit_mult.ghat).cwiseAbs().maxCoeff();
        row.N_m = rep.N;

        triangle.add(row.weighted_multiplier_gap, params.a() * row.multiplier_gap + row.ghat_gap + 1e-9);
        if (!resonant) {
            const double rhs = row.input_gap / std::sqrt(2.0 * std::numbers::pi * *table.cls.alpha) * 1.1;
            n_bound.add(std::abs(rep.N - table.N_limit), rhs + 1e-14 * table.N_limit);
            mult_bound.add(row.multiplier_gap, rhs + 1e-14 * limit_mult.plain.cwiseAbs().maxCoeff());
        } else {
            const double rhs = row.input_gap / std::sqrt(2.0 * std::numbers::pi) + opts.tol_orth;
            orth_limit.add(std::max(std::abs(limit.kernel.ghat_plus), std::abs(limit.kernel.ghat_minus)), rhs);
        }
        table.rows.push_back(row);
    }

    RatioCheck limit_q("limit_contraction_le_1_minus_epsilon");
    limit_q.add(contraction_constant(table.N_limit, F.l), limit_q_max);
    table.checks.push_back(limit_q.result());
    table.checks.push_back(triangle.result());
    if (!resonant) {
        table.checks.push_back(n_bound.result());
        table.checks.push_back(mult_bound.result());
    } else {
        table.checks.push_back(orth_limit.result());
    }
    RatioCheck mult_decrease("multiplier_gap_net_decrease");
    mult_decrease.add(table.rows.back().multiplier_gap, table.rows.front().multiplier_gap);
    table.checks.push_back(mult_decrease.result());
    add_trend_checks(table, 4.0 * opts.tol_h2 / spec.epsilon + 1e-10 * h2_norm(limit.u));
    return table;
}

double smooth_cutoff(double x, double m) {
    const double t = std::abs(x) - m;
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double rise = std::exp(-1.0 / (1.0 - t));
    const double fall = std::exp(-1.0 / t);
    return rise / (rise + fall);
}

SequenceSpec builtin_sequence(const std::string& name, SequenceKind kind, const GridFunction& limit,
                              const ShiftParams& params, int M, std::optional<GridFunction> perturbation,
                              double epsilon) {
    if (M < 1) throw std::invalid_argument("sequence length M must be positive");
    const bool resonant = classify(params).resonant();
    SequenceSpec spec{kind, {}, limit, M, epsilon, name};
    if (name == "constant") {
        spec.generator = [limit](int) { return limit; };
    } else if (name == "scale") {
        spec.generator = [limit](int m) { return (1.0 - 1.0 / m) * limit; };
    } else if (name == "alternate") {
        spec.generator = [limit](int m) { return (1.0 + ((m % 2 == 0) ? 1.0 : -1.0) / (2.0 * m)) * limit; };
    } else if (name == "add") {
        if (!perturbation) throw std::invalid_argument("sequence 'add' needs a perturbation function");
        require_same_grid(perturbation->grid, limit.grid);
        GridFunction g = resonant ? project_solvable(*perturbation, params) : *perturbation;
        spec.generator = [limit, g](int m) { return limit + (1.0 / m) * g; };
    } else if (name == "truncate") {
        spec.generator = [limit, params, resonant](int m) {
            Eigen::VectorXcd v = limit.values;
            for (Eigen::Index j = 0; j < v.size(); ++j) v[j] *= smooth_cutoff(limit.grid.x(j), m);
            GridFunction fm{limit.grid, std::move(v)};
            return resonant ? project_solvable(fm, params) : fm;
        };
    } else {
        throw std::invalid_argument("unknown sequence '" + name + "'");
    }
    return spec;
}

}  // namespace shiftsolve
