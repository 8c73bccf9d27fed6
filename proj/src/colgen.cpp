#include "kbmf/colgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace kbmf {

namespace {

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

bool weights_integral(const WeightedBinaryMatrix&) {
    return true;  // weights are integer multiplicities by construction
}

// Ceiling stop applies when the master objective only takes integral values:
// Frobenius mode always (integer weights), rho mode only at rho = 1.
bool master_objective_integral(const WeightedBinaryMatrix& w, const ObjectiveSpec& spec) {
    if (!weights_integral(w)) return false;
    if (spec.mode == ObjectiveMode::Frobenius) return true;
    return spec.rho == Rational(1);
}

struct Candidate {
    Rank1Pattern pattern;
    double value;
};

}  // namespace

CgState run_cg(const WeightedBinaryMatrix& w, const CgConfig& cfg) {
    if (cfg.columns_per_iter < 1) throw std::invalid_argument("run_cg: columns_per_iter >= 1");
    Clock clock;
    CgState state;
    state.objective_integral = master_objective_integral(w, cfg.objective);
    state.best_dual_bound = Rational(0);  // objectives are nonnegative

    ColumnPool pool;
    for (const auto& p : cfg.warm_start_patterns) pool.insert(p);

    LpParams lp_params;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        MasterModel master = build_master(w, cfg.k, cfg.objective, pool, /*relaxed=*/true);
        LpSolution sol = solve_lp(master.lp, lp_params);
        if (sol.status != LpStatus::Optimal)
            throw std::runtime_error("run_cg: restricted master LP did not solve to optimality");

        ExactLpAudit audit;
        bool audited = false;
        if (master.lp.rows.size() <= cfg.exact_audit_row_limit) {
            audit = exact_recheck(master.lp, sol);
            audited = audit.basis_ok && audit.primal_feasible && audit.dual_feasible;
        }
        Rational zeta = audited ? audit.objective : Rational::from_double(sol.objective);
        state.final_lp_value = zeta;
        state.final_lp_double = sol.objective;
        state.final_lp_exact = audited;
        state.iterations = static_cast<std::size_t>(iter) + 1;

        CgIterRecord rec;
        rec.iteration = iter;
        rec.zeta_rmlp = sol.objective;
        if (audited) rec.zeta_rmlp_exact = zeta.str();
        rec.pool_size = pool.size();

        // Integral-objective ceiling rule; the initial zero bound already
        // stops a zero-valued master.
        if (state.objective_integral && Rational(state.best_dual_bound.ceil()) >= zeta) {
            rec.dual_bound = state.best_dual_bound.to_double();
            rec.elapsed_seconds = clock.seconds();
            state.log.push_back(rec);
            state.status = CgStatus::CeilingStop;
            state.pool = pool.patterns();
            return state;
        }

        PricingInput pin = make_pricing_input(master, w, sol, audited ? &audit : nullptr);
        if (!audited) state.bound_exact = false;

        // Heuristic candidates, most valuable first, distinct supports.
        auto seeds = portfolio_seeds(cfg.seed, static_cast<std::uint64_t>(iter));
        auto members = portfolio_members(pin.h, seeds);
        std::sort(members.begin(), members.end(),
                  [](const PricingOutcome& a, const PricingOutcome& b) { return a.value > b.value; });
        std::vector<Candidate> candidates;
        double best_heur_value = 0.0;
        for (auto& mo : members) {
            best_heur_value = std::max(best_heur_value, mo.value);
            if (mo.pattern.empty()) continue;
            if (pin.mu - mo.value >= -1e-6) continue;  // reduced cost not negative enough
            if (pin.mu_exact - pin.exact_value(mo.pattern) >= Rational(0)) continue;
            if (pool.contains(mo.pattern)) continue;
            bool dup = false;
            for (const auto& c : candidates) dup = dup || c.pattern == mo.pattern;
            if (!dup) candidates.push_back({std::move(mo.pattern), mo.value});
        }

        bool ran_exact = false;
        bool proved_optimal = false;
        double omega_seen = pin.mu - best_heur_value;
        if (cfg.exact_policy == CgConfig::ExactPolicy::Always ||
            (cfg.exact_policy == CgConfig::ExactPolicy::OnHeuristicFailure && candidates.empty())) {
            ran_exact = true;
            PricingOutcome warm;
            if (!members.empty() && !members.front().pattern.empty()) warm = members.front();
            MilpBudget budget{cfg.exact_time_seconds, cfg.exact_node_limit};
            PricingOutcome ex = exact_bbqp(pin.h, budget, warm);

            // Valid upper bound on the pricing optimum: the proven MILP bound,
            // tightened to the exact incumbent value at optimality.
            Rational upper = Rational::from_double(std::max(*ex.exact_bound, 0.0));
            bool solved_exactly = *ex.exact_bound <= ex.value + 1e-9;
            if (solved_exactly) {
                Rational v = ex.pattern.empty() ? Rational(0) : pin.exact_value(ex.pattern);
                if (v < upper) upper = v < Rational(0) ? Rational(0) : v;
            }
            Rational omega_lb = pin.mu_exact - upper;
            omega_seen = (pin.mu_exact - upper).to_double();
            Rational bound = omega_lb.sign() < 0
                                 ? zeta + Rational(static_cast<long long>(cfg.k)) * omega_lb
                                 : zeta;
            if (bound > state.best_dual_bound) state.best_dual_bound = bound;

            if (omega_lb.sign() >= 0 && solved_exactly) {
                proved_optimal = true;  // no column prices out: LP optimal
            } else if (!ex.pattern.empty() && pin.mu - ex.value < -1e-6 &&
                       pin.mu_exact - pin.exact_value(ex.pattern) < Rational(0) &&
                       !pool.contains(ex.pattern)) {
                bool dup = false;
                for (const auto& c : candidates) dup = dup || c.pattern == ex.pattern;
                if (!dup)
                    candidates.insert(candidates.begin(), {ex.pattern, ex.value});
            }
        }

        int added = 0;
        for (auto& cand : candidates) {
            if (added >= cfg.columns_per_iter) break;
            if (pool.insert(std::move(cand.pattern))) ++added;
        }

        rec.omega = omega_seen;
        rec.exact_pricing = ran_exact;
        rec.columns_added = added;
        rec.dual_bound = state.best_dual_bound.to_double();
        rec.elapsed_seconds = clock.seconds();
        state.log.push_back(rec);

        if (proved_optimal) {
            state.best_dual_bound = zeta;
            state.status = CgStatus::OptimalLp;
            state.pool = pool.patterns();
            return state;
        }
        if (added == 0) {
            state.status = CgStatus::Stalled;
            state.pool = pool.patterns();
            return state;
        }
        if (clock.seconds() > cfg.time_limit_seconds) {
            state.status = CgStatus::TimeLimit;
            state.pool = pool.patterns();
            return state;
        }
    }
    state.status = CgStatus::TimeLimit;
    state.pool = pool.patterns();
    return state;
}

IntegralOutcome integral_stage(const WeightedBinaryMatrix& w, std::size_t k,
                               const std::vector<Rank1Pattern>& pool, const ObjectiveSpec& spec,
                               const MilpBudget& budget,
                               const std::vector<std::size_t>* warm_selection) {
    ColumnPool cp;
    for (const auto& p : pool) cp.insert(p);
    MasterModel master = build_master(w, k, spec, cp, /*relaxed=*/false);

    MilpModel milp{master.lp, master.integer_vars, {}, std::nullopt};
    if (warm_selection && !warm_selection->empty()) {
        std::vector<double> assignment(master.lp.vars.size(), 0.0);
        for (auto idx : *warm_selection) {
            if (idx >= cp.size()) throw std::out_of_range("integral_stage: warm index");
            assignment[master.layout.first_q + idx] = 1.0;
        }
        // Frobenius mode also fixes the zero-cover indicators.
        for (std::size_t c = 0; c < master.layout.zero_cells.size(); ++c) {
            auto [i, j] = master.layout.zero_cells[c];
            bool covered = false;
            for (auto idx : *warm_selection)
                covered = covered || cp.patterns()[idx].covers(i, j);
            assignment[master.layout.zbar_var[c]] = covered ? 1.0 : 0.0;
        }
        milp.warm_start = std::move(assignment);
    }

    IntegralOutcome out;
    out.milp = solve_milp(milp, budget);
    if (out.milp.has_incumbent) out.selected = selected_columns(master, out.milp.incumbent);
    out.factorisation = patterns_to_factorisation(cp.patterns(), out.selected, w.core.rows(),
                                                  w.core.cols(), k);
    out.objective = objective_value(w.core, out.factorisation, spec, w.row_weights, w.col_weights);
    out.zeta_f = frobenius_error(w.core, out.factorisation, w.row_weights, w.col_weights);
    return out;
}

Certificate certify_optimality(const CgState& state, const Rational& ip_objective) {
    Certificate cert;
    Rational target = state.objective_integral ? Rational(state.best_dual_bound.ceil())
                                               : state.best_dual_bound;
    cert.proven = ip_objective <= target;
    cert.gap = ip_objective - state.best_dual_bound;
    return cert;
}

namespace {

struct Timer {
    std::chrono::steady_clock::time_point t = std::chrono::steady_clock::now();
    double lap() {
        auto now = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(now - t).count();
        t = now;
        return s;
    }
};

}  // namespace

PipelineResult solve_cg_pipeline(const BinaryMatrix& x, const PipelineConfig& cfg) {
    PipelineResult res;
    Timer timer;
    res.reduced = cfg.preprocess ? reduce(x) : WeightedBinaryMatrix::unweighted(x);
    const auto& w = res.reduced;

    // Warm start from k-Greedy: the best reduced-space extraction seeds the
    // pool and the restricted IP, while the full heuristic (plain and
    // preprocessed variants) is kept as the quality benchmark the pipeline
    // must never fall behind.
    std::vector<Rank1Pattern> warm_patterns;
    Factorisation greedy_full(x.rows(), x.cols(), cfg.k);
    bool have_greedy = false;
    if (!cfg.cold_start && cfg.kgreedy_seeds > 0) {
        auto seeds = k_greedy_seeds(cfg.seed, cfg.kgreedy_seeds);
        Rational best_err;
        bool have_warm = false;
        for (auto seed : seeds) {
            auto ps = k_greedy_extract(signed_matrix(w), cfg.k, seed);
            Factorisation fr(w.core.rows(), w.core.cols(), cfg.k);
            for (std::size_t l = 0; l < ps.size(); ++l) {
                fr.a_col(l) = ps[l].a;
                fr.b_row(l) = ps[l].b;
            }
            Rational err = frobenius_error(w.core, fr, w.row_weights, w.col_weights);
            if (!have_warm || err < best_err) {
                best_err = err;
                warm_patterns = ps;
                have_warm = true;
            }
        }
        greedy_full = k_greedy(x, cfg.k, seeds, cfg.preprocess);
        have_greedy = true;
    }
    res.kgreedy_seconds = timer.lap();

    CgConfig cg_cfg;
    cg_cfg.objective = cfg.objective;
    cg_cfg.k = cfg.k;
    cg_cfg.time_limit_seconds = cfg.cg_time_seconds;
    cg_cfg.warm_start_patterns = warm_patterns;
    cg_cfg.seed = cfg.seed;
    cg_cfg.exact_policy = cfg.exact_policy;
    cg_cfg.exact_time_seconds = cfg.exact_time_seconds;
    cg_cfg.exact_node_limit = cfg.exact_node_limit;
    res.cg = run_cg(w, cg_cfg);
    res.cg_seconds = timer.lap();

    // Warm patterns were inserted first, so their pool indices are 0..
    std::vector<std::size_t> warm_sel;
    {
        ColumnPool probe;
        for (const auto& p : warm_patterns)
            if (probe.insert(p)) warm_sel.push_back(warm_sel.size());
    }
    res.integral = integral_stage(w, cfg.k, res.cg.pool, cfg.objective,
                                  MilpBudget{cfg.ip_time_seconds,
                                             std::numeric_limits<std::int64_t>::max()},
                                  warm_sel.empty() ? nullptr : &warm_sel);
    res.ip_seconds = timer.lap();

    Certificate cert = certify_optimality(res.cg, res.integral.objective);
    res.proven = cert.proven;
    res.gap = cert.gap;

    res.factorisation = expand(w, res.integral.factorisation);
    res.zeta_f = frobenius_error(x, res.factorisation);
    // Keep the warm start whenever the IP stage did not beat it in Frobenius
    // error (the certificate still refers to the IP solution's objective).
    if (have_greedy) {
        Rational greedy_err = frobenius_error(x, greedy_full);
        if (greedy_err < res.zeta_f) {
            res.factorisation = greedy_full;
            res.zeta_f = greedy_err;
            res.used_kgreedy_fallback = true;
        }
    }
    if (cfg.objective.mode == ObjectiveMode::Rho)
        res.zeta_rho = rho_error(x, res.factorisation, cfg.objective.rho);
    return res;
}

CipResult solve_cip(const BinaryMatrix& x, std::size_t k, bool preprocess, std::uint64_t seed,
                    std::size_t kgreedy_seeds, double time_limit_seconds) {
    CipResult res;
    Timer timer;
    res.reduced = preprocess ? reduce(x) : WeightedBinaryMatrix::unweighted(x);
    const auto& w = res.reduced;

    CompactModel model = build_compact(w, k, /*relaxed=*/false);
    MilpModel milp{model.lp, model.integer_vars, model.branch_priority, std::nullopt};

    Factorisation greedy_reduced(w.core.rows(), w.core.cols(), k);
    bool have_greedy = false;
    if (kgreedy_seeds > 0) {
        auto seeds = k_greedy_seeds(seed, kgreedy_seeds);
        Rational best_err;
        for (auto s : seeds) {
            auto ps = k_greedy_extract(signed_matrix(w), k, s);
            Factorisation fr(w.core.rows(), w.core.cols(), k);
            for (std::size_t l = 0; l < ps.size(); ++l) {
                fr.a_col(l) = ps[l].a;
                fr.b_row(l) = ps[l].b;
            }
            Rational err = frobenius_error(w.core, fr, w.row_weights, w.col_weights);
            if (!have_greedy || err < best_err) {
                best_err = err;
                greedy_reduced = fr;
                have_greedy = true;
            }
        }
        if (have_greedy) {
            std::vector<double> assignment(model.lp.vars.size(), 0.0);
            for (std::size_t i = 0; i < w.core.rows(); ++i)
                for (std::size_t l = 0; l < k; ++l)
                    if (greedy_reduced.a_col(l).test(i)) assignment[model.a_index(i, l)] = 1.0;
            for (std::size_t l = 0; l < k; ++l)
                for (std::size_t j = 0; j < w.core.cols(); ++j)
                    if (greedy_reduced.b_row(l).test(j)) assignment[model.b_index(l, j)] = 1.0;
            milp.warm_start = std::move(assignment);
        }
    }

    res.milp = solve_milp(milp, MilpBudget{time_limit_seconds,
                                           std::numeric_limits<std::int64_t>::max()});
    Factorisation reduced_f = res.milp.has_incumbent
                                  ? compact_factorisation(model, res.milp.incumbent)
                                  : Factorisation(w.core.rows(), w.core.cols(), k);
    res.factorisation = expand(w, reduced_f);
    res.zeta_f = frobenius_error(x, res.factorisation);
    res.dual_bound = Rational(Rational::from_double(std::max(0.0, res.milp.dual_bound)).ceil());
    res.proven = res.milp.status == MilpStatus::Optimal;
    res.gap = res.zeta_f - res.dual_bound;
    res.seconds = timer.lap();
    return res;
}

}  // namespace kbmf
