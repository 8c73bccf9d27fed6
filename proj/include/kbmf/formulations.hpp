#pragma once

#include "kbmf/lp.hpp"
#include "kbmf/matrix.hpp"
#include "kbmf/milp.hpp"
#include "kbmf/objective.hpp"
#include "kbmf/preprocess.hpp"

#include <Eigen/Dense>

#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace kbmf {

// Ordered pool of distinct nonzero rank-1 patterns (the generated columns).
class ColumnPool {
public:
    bool insert(Rank1Pattern p);  // false if empty or already present
    bool contains(const Rank1Pattern& p) const;
    std::size_t size() const { return patterns_.size(); }
    const std::vector<Rank1Pattern>& patterns() const { return patterns_; }

private:
    std::vector<Rank1Pattern> patterns_;
    std::unordered_map<std::size_t, std::vector<std::size_t>> index_;
};

// Row/variable layout of a master program, used to read duals back out.
struct MasterLayout {
    ObjectiveMode mode = ObjectiveMode::Rho;
    Rational rho = 1;
    std::size_t k = 0;
    std::vector<std::pair<std::size_t, std::size_t>> one_cells;   // E, row-major
    std::vector<std::pair<std::size_t, std::size_t>> zero_cells;  // E-bar (frobenius mode)
    std::vector<int> xi_var;    // per one cell: xi = 1 - z
    std::vector<int> zbar_var;  // per zero cell (frobenius mode only)
    int first_q = 0;
    std::size_t pool_size = 0;
    std::vector<int> one_row;   // coverage row per one cell
    std::vector<int> zero_row;  // weak coupling row per zero cell (frobenius)
    int card_row = 0;
};

struct MasterModel {
    LpModel lp;
    std::vector<int> integer_vars;  // empty when relaxed
    MasterLayout layout;
};

// Master program over a column pool.  Frobenius mode is MIP_F written with
// xi = 1 - z on the ones; rho mode charges each covered zero rho * weight per
// covering column.  The relaxation drops all upper bounds that the objective
// keeps inactive, which is what makes column generation sound (a pool column
// can never price out negative at a restricted optimum).
MasterModel build_master(const WeightedBinaryMatrix& w, std::size_t k, const ObjectiveSpec& spec,
                         const ColumnPool& pool, bool relaxed);

// Indices of the pool patterns active in a master-IP assignment.
std::vector<std::size_t> selected_columns(const MasterModel& master,
                                          const std::vector<double>& assignment);

struct CompactModel {
    LpModel lp;
    std::vector<int> integer_vars;     // a then b when integral
    std::vector<int> branch_priority;  // b-rows branch before a-entries
    std::size_t n = 0, m = 0, k = 0;

    int a_index(std::size_t i, std::size_t l) const { return static_cast<int>(i * k + l); }
    int b_index(std::size_t l, std::size_t j) const {
        return static_cast<int>(n * k + l * m + j);
    }
};

// McCormick-linearised compact program; y and z stay continuous even in the
// integer variant (binary a, b force them integral).
CompactModel build_compact(const WeightedBinaryMatrix& w, std::size_t k, bool relaxed);

Factorisation compact_factorisation(const CompactModel& model,
                                    const std::vector<double>& assignment);

struct ExponentialModel {
    LpModel lp;
    std::vector<int> integer_vars;
    std::size_t n = 0, m = 0, k = 0;
    std::size_t t_count = 0;  // 2^m - 1 enumerated B-rows

    int alpha_index(std::size_t i, std::size_t t) const {
        return static_cast<int>(i * t_count + t);
    }
    int d_index(std::size_t t) const { return static_cast<int>(n * t_count + t); }
};

// Explicit enumeration formulation (oracle use only); rejects m > 12.
ExponentialModel build_exponential(const WeightedBinaryMatrix& w, std::size_t k, bool relaxed);

struct PricingIpModel {
    LpModel lp;
    std::vector<int> integer_vars;
    std::size_t n = 0, m = 0;
    std::optional<std::vector<double>> warm;

    int a_index(std::size_t i) const { return static_cast<int>(i); }
    int b_index(std::size_t j) const { return static_cast<int>(n + j); }
};

// max sum h_ij y_ij with y in MC(a_i, b_j), written as a minimisation.  Only
// the McCormick face the objective can push against is emitted per cell,
// which leaves every node relaxation value unchanged.
PricingIpModel build_pricing_ip(const Eigen::MatrixXd& h, const Rank1Pattern* warm = nullptr);

// Dual-derived pricing data.  h carries the floating duals, h_exact the
// audited rational duals when available.
struct PricingInput {
    Eigen::MatrixXd h;
    std::vector<Rational> h_exact;  // row-major n*m, empty when no audit
    double mu = 0.0;
    Rational mu_exact;
    bool exact = false;
    ObjectiveMode mode = ObjectiveMode::Rho;

    bool has_exact() const { return exact && !h_exact.empty(); }
    Rational exact_value(const Rank1Pattern& p) const;  // sum of h_exact over supp(p)
};

PricingInput make_pricing_input(const MasterModel& master, const WeightedBinaryMatrix& w,
                                const LpSolution& sol, const ExactLpAudit* audit);

// Cell weight r_i * c_j.
std::int64_t cell_weight(const WeightedBinaryMatrix& w, std::size_t i, std::size_t j);

}  // namespace kbmf
