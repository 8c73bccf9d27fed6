#pragma once

#include "kbmf/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace kbmf {

enum class Relation { LessEqual, GreaterEqual, Equal };

struct LpVariable {
    std::optional<Rational> lower = Rational(0);  // nullopt = -inf
    std::optional<Rational> upper;                // nullopt = +inf
    Rational objective;
};

struct LpTerm {
    int var;
    Rational coeff;
};

struct LpConstraint {
    std::vector<LpTerm> terms;
    Relation rel = Relation::LessEqual;
    Rational rhs;
};

// Bounded-variable LP in row form, always minimising.  Coefficients are
// exact rationals so optimal bases can be re-audited exactly; the simplex
// itself runs in floating point.
struct LpModel {
    std::vector<LpVariable> vars;
    std::vector<LpConstraint> rows;
    Rational objective_offset;

    int add_var(Rational lo, std::optional<Rational> up, Rational obj) {
        vars.push_back({std::move(lo), std::move(up), std::move(obj)});
        return static_cast<int>(vars.size()) - 1;
    }
    void add_row(std::vector<LpTerm> terms, Relation rel, Rational rhs) {
        rows.push_back({std::move(terms), rel, std::move(rhs)});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class ColStatus : std::uint8_t { Basic, AtLower, AtUpper, FreeZero };

struct LpParams {
    double feas_tol = 1e-7;
    double opt_tol = 1e-7;
    int iteration_limit = 200000;
};

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    std::vector<double> primal;  // structural variables
    std::vector<double> duals;   // one per row; reduced cost d_j = c_j - sum_i y_i a_ij
    double objective = 0.0;      // includes the model offset
    double dual_objective = 0.0;
    int iterations = 0;
    // Final basis snapshot (columns: structural 0..n-1, then one slack per row).
    std::vector<int> basis_head;
    std::vector<ColStatus> col_status;
};

LpSolution solve_lp(const LpModel& model, const LpParams& params = {});

// Exact rational re-evaluation of the final basis: solves the basis system
// over the rationals and checks primal and dual feasibility with zero
// tolerance.  Objective coefficients of the master programs are integers or
// 1/k multiples, so this is what makes ceiling-based stopping sound.
struct ExactLpAudit {
    bool basis_ok = false;        // basis matrix nonsingular
    bool primal_feasible = false;
    bool dual_feasible = false;
    Rational objective;           // exact objective of the audited basis (with offset)
    std::vector<Rational> primal;  // structural variables
    std::vector<Rational> duals;   // per row
};

ExactLpAudit exact_recheck(const LpModel& model, const LpSolution& solution);

}  // namespace kbmf
