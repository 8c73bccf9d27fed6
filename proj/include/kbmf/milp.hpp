#pragma once

#include "kbmf/lp.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kbmf {

struct MilpModel {
    LpModel base;
    std::vector<int> integer_vars;  // all binary in this repo
    // Branching class per variable (smaller branches first); empty = uniform.
    std::vector<int> branch_priority;
    // Feasible assignment of the integer variables (continuous completion is
    // computed by an LP solve); never lost during the search.
    std::optional<std::vector<double>> warm_start;
};

struct MilpBudget {
    double time_seconds = 1e18;
    std::int64_t nodes = std::numeric_limits<std::int64_t>::max();
};

enum class MilpStatus { Optimal, FeasibleLimit, Infeasible };

struct MilpResult {
    MilpStatus status = MilpStatus::Infeasible;
    bool has_incumbent = false;
    std::vector<double> incumbent;  // full assignment, integers rounded
    double incumbent_objective = std::numeric_limits<double>::infinity();
    double dual_bound = -std::numeric_limits<double>::infinity();
    std::int64_t node_count = 0;
    // Monotone traces, one entry per processed node (tests rely on these).
    std::vector<double> incumbent_history;
    std::vector<double> bound_history;
};

// Depth-first branch and bound with best-bound restarts every 500 nodes and
// most-fractional branching.  When every objective coefficient (and the
// offset) is integral, nodes are pruned against incumbent - 1 + tol.
MilpResult solve_milp(const MilpModel& model, const MilpBudget& budget = {}, double tol = 1e-6);

}  // namespace kbmf
