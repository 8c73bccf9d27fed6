#pragma once

// Test-only reference LP solver: textbook Big-M dense-tableau simplex with
// Bland's rule.  Deliberately independent of kbmf::solve_lp; it only shares
// the model struct for convenience.

#include "kbmf/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace kbmf::test {

enum class NaiveStatus { Optimal, Infeasible, Unbounded };

struct NaiveResult {
    NaiveStatus status;
    double objective = 0.0;
};

// Solves min c^T x, rows with <=/>=/=, 0 <= x (upper bounds must be encoded
// as rows by the caller).
inline NaiveResult naive_simplex(const LpModel& model) {
    const double kM = 1e7;
    const std::size_t n = model.vars.size();
    const std::size_t m = model.rows.size();

    // Row data with nonnegative rhs.
    std::vector<std::vector<double>> a(m, std::vector<double>(n, 0.0));
    std::vector<double> b(m, 0.0);
    std::vector<int> rel(m);  // 0: <=, 1: >=, 2: =
    for (std::size_t i = 0; i < m; ++i) {
        for (const auto& t : model.rows[i].terms) a[i][t.var] += t.coeff.to_double();
        b[i] = model.rows[i].rhs.to_double();
        switch (model.rows[i].rel) {
            case Relation::LessEqual: rel[i] = 0; break;
            case Relation::GreaterEqual: rel[i] = 1; break;
            case Relation::Equal: rel[i] = 2; break;
        }
        if (b[i] < 0) {
            for (auto& v : a[i]) v = -v;
            b[i] = -b[i];
            if (rel[i] == 0)
                rel[i] = 1;
            else if (rel[i] == 1)
                rel[i] = 0;
        }
    }

    std::size_t slacks = 0, artificials = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (rel[i] == 0)
            ++slacks;
        else if (rel[i] == 1) {
            ++slacks;
            ++artificials;
        } else
            ++artificials;
    }
    const std::size_t cols = n + slacks + artificials;

    std::vector<std::vector<double>> tab(m + 1, std::vector<double>(cols + 1, 0.0));
    std::vector<std::size_t> basis(m);
    std::size_t s_at = n, r_at = n + slacks;
    std::vector<bool> artificial_col(cols, false);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tab[i][j] = a[i][j];
        tab[i][cols] = b[i];
        if (rel[i] == 0) {
            tab[i][s_at] = 1.0;
            basis[i] = s_at++;
        } else if (rel[i] == 1) {
            tab[i][s_at] = -1.0;
            ++s_at;
            tab[i][r_at] = 1.0;
            artificial_col[r_at] = true;
            basis[i] = r_at++;
        } else {
            tab[i][r_at] = 1.0;
            artificial_col[r_at] = true;
            basis[i] = r_at++;
        }
    }
    for (std::size_t j = 0; j < n; ++j) tab[m][j] = model.vars[j].objective.to_double();
    for (std::size_t j = n + slacks; j < cols; ++j) tab[m][j] = kM;
    // Price out the basic artificials.
    for (std::size_t i = 0; i < m; ++i) {
        if (!artificial_col[basis[i]]) continue;
        for (std::size_t j = 0; j <= cols; ++j) tab[m][j] -= kM * tab[i][j];
    }

    for (int iter = 0; iter < 100000; ++iter) {
        // Bland: first column with a negative reduced cost.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j)
            if (tab[m][j] < -1e-9) {
                enter = j;
                break;
            }
        if (enter == cols) break;
        std::size_t leave = m;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] > 1e-11) {
                double ratio = tab[i][cols] / tab[i][enter];
                if (ratio < best - 1e-12 ||
                    (ratio < best + 1e-12 && (leave == m || basis[i] < basis[leave]))) {
                    best = ratio;
                    leave = i;
                }
            }
        }
        if (leave == m) return {NaiveStatus::Unbounded, 0.0};
        double piv = tab[leave][enter];
        for (std::size_t j = 0; j <= cols; ++j) tab[leave][j] /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            double f = tab[i][enter];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) tab[i][j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }

    for (std::size_t i = 0; i < m; ++i)
        if (artificial_col[basis[i]] && tab[i][cols] > 1e-6) return {NaiveStatus::Infeasible, 0.0};

    double obj = model.objective_offset.to_double();
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = tab[i][cols];
    for (std::size_t j = 0; j < n; ++j) obj += model.vars[j].objective.to_double() * x[j];
    return {NaiveStatus::Optimal, obj};
}

}  // namespace kbmf::test
