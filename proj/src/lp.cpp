#include "kbmf/lp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kbmf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotDrop = 1e-11;
constexpr double kPivotMin = 1e-7;
constexpr double kDegenerateStep = 1e-9;
constexpr int kRefactorEvery = 100;
constexpr int kBlandAfterStalls = 50;

struct Eta {
    int row;
    Eigen::VectorXd alpha;
};

// Bounded-variable primal simplex over the system  A x - s = 0  with the
// row activity s carrying the constraint range in its bounds.  Basis inverse
// is a dense LU plus product-form eta updates, refactorised periodically.
class Simplex {
public:
    Simplex(const LpModel& model, const LpParams& params) : p_(params) {
        nv_ = static_cast<int>(model.vars.size());
        nr_ = static_cast<int>(model.rows.size());
        nc_ = nv_ + nr_;
        lo_.assign(nc_, -kInf);
        up_.assign(nc_, kInf);
        cost_.assign(nc_, 0.0);
        col_rows_.resize(nc_);
        col_vals_.resize(nc_);

        for (int j = 0; j < nv_; ++j) {
            const auto& v = model.vars[j];
            if (v.lower) lo_[j] = v.lower->to_double();
            if (v.upper) up_[j] = v.upper->to_double();
            cost_[j] = v.objective.to_double();
        }
        for (int i = 0; i < nr_; ++i) {
            const auto& row = model.rows[i];
            for (const auto& t : row.terms) {
                col_rows_[t.var].push_back(i);
                col_vals_[t.var].push_back(t.coeff.to_double());
            }
            int s = nv_ + i;
            col_rows_[s].push_back(i);
            col_vals_[s].push_back(-1.0);
            double rhs = row.rhs.to_double();
            switch (row.rel) {
                case Relation::LessEqual: up_[s] = rhs; break;
                case Relation::GreaterEqual: lo_[s] = rhs; break;
                case Relation::Equal: lo_[s] = up_[s] = rhs; break;
            }
        }

        x_.assign(nc_, 0.0);
        status_.assign(nc_, ColStatus::FreeZero);
        head_.resize(nr_);
        for (int j = 0; j < nv_; ++j) {
            if (lo_[j] > -kInf) {
                status_[j] = ColStatus::AtLower;
                x_[j] = lo_[j];
            } else if (up_[j] < kInf) {
                status_[j] = ColStatus::AtUpper;
                x_[j] = up_[j];
            }
        }
        for (int i = 0; i < nr_; ++i) {
            head_[i] = nv_ + i;
            status_[nv_ + i] = ColStatus::Basic;
        }
        refactorize();
    }

    LpSolution run(const LpModel& model) {
        LpSolution sol;
        // phase() leaves a terminal status in sol and returns false on
        // failure; a true return from phase 1 means primal feasibility.
        if (phase(true, sol)) {
            bland_ = false;
            stall_ = 0;
            phase(false, sol);
        }
        finish(model, sol);
        return sol;
    }

private:
    void refactorize() {
        Eigen::MatrixXd b = Eigen::MatrixXd::Zero(nr_, nr_);
        for (int i = 0; i < nr_; ++i) {
            int j = head_[i];
            for (std::size_t t = 0; t < col_rows_[j].size(); ++t)
                b(col_rows_[j][t], i) = col_vals_[j][t];
        }
        lu_.compute(b);
        etas_.clear();
        recompute_basics();
    }

    void recompute_basics() {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nr_);
        for (int j = 0; j < nc_; ++j) {
            if (status_[j] == ColStatus::Basic || x_[j] == 0.0) continue;
            for (std::size_t t = 0; t < col_rows_[j].size(); ++t)
                rhs(col_rows_[j][t]) -= col_vals_[j][t] * x_[j];
        }
        Eigen::VectorXd xb = ftran(rhs);
        for (int i = 0; i < nr_; ++i) x_[head_[i]] = xb(i);
    }

    Eigen::VectorXd ftran(const Eigen::VectorXd& v) const {
        Eigen::VectorXd w = lu_.solve(v);
        for (const auto& e : etas_) {
            double t = w(e.row) / e.alpha(e.row);
            w -= e.alpha * t;
            w(e.row) = t;
        }
        return w;
    }

    Eigen::VectorXd btran(const Eigen::VectorXd& c) const {
        Eigen::VectorXd w = c;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double wp = w(it->row);
            double rest = it->alpha.dot(w) - it->alpha(it->row) * wp;
            w(it->row) = (wp - rest) / it->alpha(it->row);
        }
        Eigen::VectorXd y = lu_.transpose().solve(w);
        return y;
    }

    Eigen::VectorXd dense_col(int j) const {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(nr_);
        for (std::size_t t = 0; t < col_rows_[j].size(); ++t) c(col_rows_[j][t]) = col_vals_[j][t];
        return c;
    }

    double infeasibility() const {
        double total = 0;
        for (int i = 0; i < nr_; ++i) {
            double v = x_[head_[i]];
            if (v < lo_[head_[i]]) total += lo_[head_[i]] - v;
            if (v > up_[head_[i]]) total += v - up_[head_[i]];
        }
        return total;
    }

    // One simplex phase; returns true if it ended at phase optimality.
    bool phase(bool phase1, LpSolution& sol) {
        std::vector<char> excluded(nc_, 0);
        while (true) {
            if (iterations_ >= p_.iteration_limit) {
                sol.status = LpStatus::IterationLimit;
                return false;
            }
            if (phase1 && infeasibility() <= p_.feas_tol * (1.0 + nr_)) return true;

            // Phase-dependent costs: in phase 1 only infeasible basics carry
            // a +/-1 cost pushing them toward their violated bound.
            Eigen::VectorXd cb = Eigen::VectorXd::Zero(nr_);
            for (int i = 0; i < nr_; ++i) {
                int j = head_[i];
                if (phase1) {
                    if (x_[j] < lo_[j] - p_.feas_tol)
                        cb(i) = -1.0;
                    else if (x_[j] > up_[j] + p_.feas_tol)
                        cb(i) = 1.0;
                } else {
                    cb(i) = cost_[j];
                }
            }
            Eigen::VectorXd y = btran(cb);

            int enter = -1;
            double best_score = 0.0;
            int sigma = +1;
            for (int j = 0; j < nc_; ++j) {
                if (status_[j] == ColStatus::Basic || excluded[j]) continue;
                if (lo_[j] == up_[j]) continue;  // fixed, never enters
                double cj = phase1 ? 0.0 : cost_[j];
                double d = cj;
                for (std::size_t t = 0; t < col_rows_[j].size(); ++t)
                    d -= y(col_rows_[j][t]) * col_vals_[j][t];
                double score = 0.0;
                int dir = 0;
                if (status_[j] == ColStatus::AtLower && d < -p_.opt_tol) {
                    score = -d;
                    dir = +1;
                } else if (status_[j] == ColStatus::AtUpper && d > p_.opt_tol) {
                    score = d;
                    dir = -1;
                } else if (status_[j] == ColStatus::FreeZero && std::abs(d) > p_.opt_tol) {
                    score = std::abs(d);
                    dir = d < 0 ? +1 : -1;
                }
                if (dir == 0) continue;
                if (bland_) {
                    enter = j;
                    sigma = dir;
                    break;
                }
                if (score > best_score + 1e-12 ||
                    (score > best_score - 1e-12 && (enter == -1 || j < enter))) {
                    best_score = score;
                    enter = j;
                    sigma = dir;
                }
            }
            if (enter < 0) {
                if (phase1 && infeasibility() > p_.feas_tol * (1.0 + nr_)) {
                    sol.status = LpStatus::Infeasible;
                    return false;
                }
                if (!phase1) sol.status = LpStatus::Optimal;
                return true;
            }

            Eigen::VectorXd alpha = ftran(dense_col(enter));

            // Ratio test.  In phase 1 an infeasible basic blocks where it
            // turns feasible; feasible basics block at the bound they would
            // leave.  The entering variable's own opposite bound is a flip.
            double t_max = kInf;
            if (lo_[enter] > -kInf && up_[enter] < kInf) t_max = up_[enter] - lo_[enter];
            int leave_row = -1;
            bool leave_at_upper = false;
            double best_t = t_max;
            double best_alpha = 0.0;
            for (int i = 0; i < nr_; ++i) {
                double a = alpha(i);
                if (std::abs(a) <= kPivotDrop) continue;
                int bj = head_[i];
                double delta = -sigma * a;
                double xb = x_[bj];
                double lim = kInf;
                bool hits_upper = false;
                bool below = phase1 && xb < lo_[bj] - p_.feas_tol;
                bool above = phase1 && xb > up_[bj] + p_.feas_tol;
                if (below) {
                    if (delta > 0) lim = (lo_[bj] - xb) / delta;
                } else if (above) {
                    if (delta < 0) {
                        lim = (up_[bj] - xb) / delta;
                        hits_upper = true;
                    }
                } else if (delta > 0 && up_[bj] < kInf) {
                    lim = (up_[bj] - xb) / delta;
                    hits_upper = true;
                } else if (delta < 0 && lo_[bj] > -kInf) {
                    lim = (lo_[bj] - xb) / delta;
                }
                if (lim == kInf) continue;
                lim = std::max(lim, 0.0);
                bool better;
                if (bland_) {
                    better = lim < best_t - 1e-12 ||
                             (lim <= best_t + 1e-12 && (leave_row < 0 || bj < head_[leave_row]));
                } else {
                    better = lim < best_t - 1e-12 ||
                             (lim <= best_t + 1e-12 &&
                              (leave_row < 0 || std::abs(a) > std::abs(best_alpha)));
                }
                if (better) {
                    best_t = std::min(lim, best_t);
                    leave_row = i;
                    leave_at_upper = hits_upper;
                    best_alpha = a;
                }
            }

            if (best_t == kInf) {
                if (!phase1) {
                    sol.status = LpStatus::Unbounded;
                    return false;
                }
                // A phase-1 ray means numerical trouble; refactorise once,
                // then give up on this entering candidate.
                if (!etas_.empty()) {
                    refactorize();
                    continue;
                }
                excluded[enter] = 1;
                continue;
            }

            if (leave_row >= 0 && std::abs(alpha(leave_row)) < kPivotMin) {
                if (!etas_.empty()) {
                    refactorize();
                    continue;
                }
                excluded[enter] = 1;
                continue;
            }

            double t = best_t;
            for (int i = 0; i < nr_; ++i) {
                double a = alpha(i);
                if (std::abs(a) <= kPivotDrop) continue;
                x_[head_[i]] -= sigma * t * a;
            }
            if (leave_row < 0) {
                // Bound flip.
                x_[enter] = sigma > 0 ? up_[enter] : lo_[enter];
                status_[enter] = sigma > 0 ? ColStatus::AtUpper : ColStatus::AtLower;
            } else {
                int out = head_[leave_row];
                x_[enter] = x_[enter] + sigma * t;
                x_[out] = leave_at_upper ? up_[out] : lo_[out];
                status_[out] = leave_at_upper ? ColStatus::AtUpper : ColStatus::AtLower;
                head_[leave_row] = enter;
                status_[enter] = ColStatus::Basic;
                etas_.push_back({leave_row, alpha});
                if (static_cast<int>(etas_.size()) >= kRefactorEvery) refactorize();
            }
            ++iterations_;
            std::fill(excluded.begin(), excluded.end(), 0);

            if (t <= kDegenerateStep) {
                if (++stall_ >= kBlandAfterStalls) bland_ = true;
            } else {
                stall_ = 0;
            }
        }
    }

    void finish(const LpModel& model, LpSolution& sol) {
        sol.iterations = iterations_;
        sol.primal.assign(x_.begin(), x_.begin() + nv_);
        sol.basis_head = head_;
        sol.col_status = status_;

        Eigen::VectorXd cb(nr_);
        for (int i = 0; i < nr_; ++i) cb(i) = cost_[head_[i]];
        Eigen::VectorXd y = btran(cb);
        sol.duals.assign(nr_, 0.0);
        for (int i = 0; i < nr_; ++i) sol.duals[i] = y(i);

        double obj = model.objective_offset.to_double();
        for (int j = 0; j < nv_; ++j) obj += cost_[j] * x_[j];
        sol.objective = obj;

        // Any basis satisfies c^T x = sum over nonbasic of d_j x_j (our rhs
        // is carried by the slack bounds), so this equals the primal value at
        // optimality and is reported as the dual side.
        double dobj = model.objective_offset.to_double();
        for (int j = 0; j < nc_; ++j) {
            if (status_[j] == ColStatus::Basic || x_[j] == 0.0) continue;
            double d = cost_[j];
            for (std::size_t t = 0; t < col_rows_[j].size(); ++t)
                d -= y(col_rows_[j][t]) * col_vals_[j][t];
            dobj += d * x_[j];
        }
        sol.dual_objective = dobj;
    }

    LpParams p_;
    int nv_ = 0, nr_ = 0, nc_ = 0;
    std::vector<double> lo_, up_, cost_;
    std::vector<std::vector<int>> col_rows_;
    std::vector<std::vector<double>> col_vals_;
    std::vector<double> x_;
    std::vector<ColStatus> status_;
    std::vector<int> head_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
    std::vector<Eta> etas_;
    int iterations_ = 0;
    int stall_ = 0;
    bool bland_ = false;
};

// Exact dense Gaussian elimination; returns false on a singular matrix.
bool solve_rational_system(std::vector<std::vector<Rational>> mat, std::vector<Rational> rhs,
                           std::vector<Rational>& out) {
    const std::size_t n = mat.size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        // Pivot choice: any exact nonzero works; prefer the numerically
        // largest to keep intermediate fractions small.
        std::size_t piv = n;
        double best = -1.0;
        for (std::size_t r = col; r < n; ++r) {
            if (mat[r][col].is_zero()) continue;
            double mag = std::abs(mat[r][col].to_double());
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (piv == n) return false;
        std::swap(mat[col], mat[piv]);
        std::swap(rhs[col], rhs[piv]);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (mat[r][col].is_zero()) continue;
            Rational f = mat[r][col] / mat[col][col];
            mat[r][col] = Rational(0);
            for (std::size_t c = col + 1; c < n; ++c) {
                if (!mat[col][c].is_zero()) mat[r][c] -= f * mat[col][c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    out.assign(n, Rational(0));
    for (std::size_t ri = n; ri-- > 0;) {
        Rational acc = rhs[ri];
        for (std::size_t c = ri + 1; c < n; ++c)
            if (!mat[ri][c].is_zero()) acc -= mat[ri][c] * out[c];
        out[ri] = acc / mat[ri][ri];
    }
    return true;
}

}  // namespace

LpSolution solve_lp(const LpModel& model, const LpParams& params) {
    for (const auto& v : model.vars)
        if (v.lower && v.upper && *v.upper < *v.lower)
            throw std::invalid_argument("solve_lp: variable with upper < lower");
    Simplex s(model, params);
    return s.run(model);
}

ExactLpAudit exact_recheck(const LpModel& model, const LpSolution& solution) {
    ExactLpAudit audit;
    const int nv = static_cast<int>(model.vars.size());
    const int nr = static_cast<int>(model.rows.size());
    const int nc = nv + nr;
    if (static_cast<int>(solution.basis_head.size()) != nr ||
        static_cast<int>(solution.col_status.size()) != nc)
        throw std::invalid_argument("exact_recheck: solution does not match model");

    // Rational column view (structural columns from the rows, slack -1).
    std::vector<std::vector<std::pair<int, Rational>>> cols(nc);
    for (int i = 0; i < nr; ++i) {
        for (const auto& t : model.rows[i].terms) cols[t.var].push_back({i, t.coeff});
        cols[nv + i].push_back({i, Rational(-1)});
    }
    auto lower_of = [&](int j) -> std::optional<Rational> {
        if (j < nv) return model.vars[j].lower;
        const auto& row = model.rows[j - nv];
        if (row.rel == Relation::LessEqual) return std::nullopt;
        return row.rhs;
    };
    auto upper_of = [&](int j) -> std::optional<Rational> {
        if (j < nv) return model.vars[j].upper;
        const auto& row = model.rows[j - nv];
        if (row.rel == Relation::GreaterEqual) return std::nullopt;
        return row.rhs;
    };
    auto cost_of = [&](int j) { return j < nv ? model.vars[j].objective : Rational(0); };

    // Nonbasic values at their recorded bounds.
    std::vector<Rational> xval(nc, Rational(0));
    for (int j = 0; j < nc; ++j) {
        switch (solution.col_status[j]) {
            case ColStatus::Basic: break;
            case ColStatus::AtLower: {
                auto b = lower_of(j);
                if (!b) return audit;  // inconsistent snapshot
                xval[j] = *b;
                break;
            }
            case ColStatus::AtUpper: {
                auto b = upper_of(j);
                if (!b) return audit;
                xval[j] = *b;
                break;
            }
            case ColStatus::FreeZero: xval[j] = Rational(0); break;
        }
    }

    std::vector<Rational> rhs(nr, Rational(0));
    for (int j = 0; j < nc; ++j) {
        if (solution.col_status[j] == ColStatus::Basic || xval[j].is_zero()) continue;
        for (const auto& [r, a] : cols[j]) rhs[r] -= a * xval[j];
    }
    std::vector<std::vector<Rational>> bmat(nr, std::vector<Rational>(nr, Rational(0)));
    for (int t = 0; t < nr; ++t)
        for (const auto& [r, a] : cols[solution.basis_head[t]]) bmat[r][t] = a;

    std::vector<Rational> xb;
    if (!solve_rational_system(bmat, rhs, xb)) return audit;
    audit.basis_ok = true;
    for (int t = 0; t < nr; ++t) xval[solution.basis_head[t]] = xb[t];

    audit.primal_feasible = true;
    for (int j = 0; j < nc; ++j) {
        auto lb = lower_of(j), ub = upper_of(j);
        if (lb && xval[j] < *lb) audit.primal_feasible = false;
        if (ub && xval[j] > *ub) audit.primal_feasible = false;
    }

    std::vector<std::vector<Rational>> bt(nr, std::vector<Rational>(nr, Rational(0)));
    for (int t = 0; t < nr; ++t)
        for (const auto& [r, a] : cols[solution.basis_head[t]]) bt[t][r] = a;
    std::vector<Rational> cb(nr, Rational(0));
    for (int t = 0; t < nr; ++t) cb[t] = cost_of(solution.basis_head[t]);
    std::vector<Rational> y;
    if (!solve_rational_system(bt, cb, y)) {
        audit.basis_ok = false;
        return audit;
    }

    audit.dual_feasible = true;
    for (int j = 0; j < nc; ++j) {
        if (solution.col_status[j] == ColStatus::Basic) continue;
        auto lb = lower_of(j), ub = upper_of(j);
        if (lb && ub && *lb == *ub) continue;  // fixed columns have free sign
        Rational d = cost_of(j);
        for (const auto& [r, a] : cols[j]) d -= y[r] * a;
        switch (solution.col_status[j]) {
            case ColStatus::AtLower:
                if (d.sign() < 0) audit.dual_feasible = false;
                break;
            case ColStatus::AtUpper:
                if (d.sign() > 0) audit.dual_feasible = false;
                break;
            case ColStatus::FreeZero:
                if (d.sign() != 0) audit.dual_feasible = false;
                break;
            case ColStatus::Basic: break;
        }
    }

    audit.objective = model.objective_offset;
    for (int j = 0; j < nv; ++j)
        if (!xval[j].is_zero()) audit.objective += model.vars[j].objective * xval[j];
    audit.primal.assign(xval.begin(), xval.begin() + nv);
    audit.duals = std::move(y);
    return audit;
}

}  // namespace kbmf
