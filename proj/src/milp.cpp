#include "kbmf/milp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace kbmf {

namespace {

constexpr int kBestBoundRestart = 500;

struct Node {
    std::vector<std::pair<int, int>> fixes;  // (integer var, value)
    double estimate;                         // parent LP bound, valid for the subtree
};

struct Clock {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

bool objective_is_integral(const LpModel& m) {
    if (!m.objective_offset.is_integer()) return false;
    for (const auto& v : m.vars)
        if (!v.objective.is_integer()) return false;
    return true;
}

LpModel with_fixes(const LpModel& base, const std::vector<std::pair<int, int>>& fixes) {
    LpModel m = base;
    for (auto [var, val] : fixes) {
        m.vars[var].lower = Rational(val);
        m.vars[var].upper = Rational(val);
    }
    return m;
}

}  // namespace

MilpResult solve_milp(const MilpModel& model, const MilpBudget& budget, double tol) {
    MilpResult res;
    Clock clock;
    const bool integral_obj = objective_is_integral(model.base);
    // A node must beat the incumbent by this much to stay open; with an
    // integral objective anything within 1 of the incumbent cannot improve.
    const double improve = integral_obj ? 1.0 - tol : 1e-9;

    if (model.warm_start) {
        // Continuous completion of the warm integers is the fixed LP.
        std::vector<std::pair<int, int>> fixes;
        fixes.reserve(model.integer_vars.size());
        for (int v : model.integer_vars)
            fixes.push_back({v, (*model.warm_start)[v] > 0.5 ? 1 : 0});
        LpSolution warm = solve_lp(with_fixes(model.base, fixes));
        if (warm.status != LpStatus::Optimal)
            throw std::invalid_argument("solve_milp: infeasible warm start");
        res.has_incumbent = true;
        res.incumbent = warm.primal;
        for (int v : model.integer_vars) res.incumbent[v] = std::round(res.incumbent[v]);
        res.incumbent_objective = warm.objective;
    }

    LpSolution root = solve_lp(model.base);
    if (root.status == LpStatus::Infeasible) {
        if (res.has_incumbent) {  // cannot happen with a feasible warm start
            res.status = MilpStatus::Optimal;
            res.dual_bound = res.incumbent_objective;
        }
        return res;
    }
    if (root.status == LpStatus::Unbounded)
        throw std::invalid_argument("solve_milp: unbounded relaxation");
    const double root_bound = root.objective;
    res.dual_bound = root_bound;

    if (budget.nodes <= 0) {
        // Contract case: report the root bound, keep the warm incumbent.
        res.status = MilpStatus::FeasibleLimit;
        return res;
    }

    std::vector<Node> open;
    open.push_back({{}, root_bound});
    std::int64_t since_restart = 0;

    auto current_bound = [&]() {
        double b = res.incumbent_objective;
        for (const auto& n : open) b = std::min(b, n.estimate);
        return b;
    };

    while (!open.empty()) {
        if (res.node_count >= budget.nodes || clock.seconds() > budget.time_seconds) {
            res.dual_bound = current_bound();
            res.status = MilpStatus::FeasibleLimit;
            return res;
        }

        // Depth-first, jumping to the best-bound node every 500 picks.
        std::size_t pick = open.size() - 1;
        if (++since_restart >= kBestBoundRestart) {
            since_restart = 0;
            for (std::size_t i = 0; i < open.size(); ++i)
                if (open[i].estimate < open[pick].estimate) pick = i;
        }
        Node node = std::move(open[pick]);
        open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));
        ++res.node_count;

        if (!(res.has_incumbent && node.estimate >= res.incumbent_objective - improve)) {
            LpSolution lp = solve_lp(with_fixes(model.base, node.fixes));
            bool prune = lp.status != LpStatus::Optimal ||
                         (res.has_incumbent && lp.objective >= res.incumbent_objective - improve);
            if (!prune) {
                // Most fractional variable within the best priority class.
                int branch_var = -1;
                double branch_dist = -1.0;
                int branch_prio = std::numeric_limits<int>::max();
                for (int v : model.integer_vars) {
                    double val = lp.primal[v];
                    double frac = val - std::floor(val);
                    double dist = std::min(frac, 1.0 - frac);
                    if (dist <= tol) continue;
                    int prio = model.branch_priority.empty() ? 0 : model.branch_priority[v];
                    if (prio < branch_prio ||
                        (prio == branch_prio && dist > branch_dist + 1e-12)) {
                        branch_prio = prio;
                        branch_dist = dist;
                        branch_var = v;
                    }
                }
                if (branch_var < 0) {
                    if (!res.has_incumbent || lp.objective < res.incumbent_objective) {
                        res.has_incumbent = true;
                        res.incumbent = lp.primal;
                        for (int v : model.integer_vars)
                            res.incumbent[v] = std::round(res.incumbent[v]);
                        res.incumbent_objective = lp.objective;
                    }
                } else {
                    int near = lp.primal[branch_var] >= 0.5 ? 1 : 0;
                    Node far_child{node.fixes, lp.objective};
                    far_child.fixes.push_back({branch_var, 1 - near});
                    Node near_child{node.fixes, lp.objective};
                    near_child.fixes.push_back({branch_var, near});
                    open.push_back(std::move(far_child));
                    open.push_back(std::move(near_child));  // DFS explores this first
                }
            }
        }

        res.dual_bound = current_bound();
        res.bound_history.push_back(res.dual_bound);
        res.incumbent_history.push_back(res.incumbent_objective);
    }

    if (!res.has_incumbent) {
        res.status = MilpStatus::Infeasible;
        return res;
    }
    res.status = MilpStatus::Optimal;
    res.dual_bound = res.incumbent_objective;
    if (!res.bound_history.empty()) res.bound_history.back() = res.dual_bound;
    return res;
}

}  // namespace kbmf
