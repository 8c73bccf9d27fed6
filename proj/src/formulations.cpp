#include "kbmf/formulations.hpp"

#include <algorithm>
#include <stdexcept>

namespace kbmf {

bool ColumnPool::insert(Rank1Pattern p) {
    if (p.empty()) return false;
    if (contains(p)) return false;
    index_[p.hash()].push_back(patterns_.size());
    patterns_.push_back(std::move(p));
    return true;
}

bool ColumnPool::contains(const Rank1Pattern& p) const {
    auto it = index_.find(p.hash());
    if (it == index_.end()) return false;
    for (auto idx : it->second)
        if (patterns_[idx] == p) return true;
    return false;
}

std::int64_t cell_weight(const WeightedBinaryMatrix& w, std::size_t i, std::size_t j) {
    return w.row_weights[i] * w.col_weights[j];
}

MasterModel build_master(const WeightedBinaryMatrix& w, std::size_t k, const ObjectiveSpec& spec,
                         const ColumnPool& pool, bool relaxed) {
    if (k < 1) throw std::invalid_argument("build_master: k must be positive");
    const BinaryMatrix& x = w.core;
    MasterModel master;
    MasterLayout& lay = master.layout;
    lay.mode = spec.mode;
    lay.rho = spec.mode == ObjectiveMode::Rho ? spec.rho : Rational(1);
    lay.k = k;
    lay.pool_size = pool.size();
    LpModel& lp = master.lp;

    const bool frob = spec.mode == ObjectiveMode::Frobenius;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x.is_one(i, j)) lay.one_cells.push_back({i, j});
            if (frob && x.is_zero(i, j)) lay.zero_cells.push_back({i, j});
        }

    // xi variables for the ones; upper bound only matters for the IP.
    for (auto [i, j] : lay.one_cells) {
        std::optional<Rational> ub = relaxed ? std::nullopt : std::optional<Rational>(1);
        lay.xi_var.push_back(lp.add_var(Rational(0), ub, Rational(cell_weight(w, i, j))));
    }
    if (frob) {
        for (auto [i, j] : lay.zero_cells) {
            std::optional<Rational> ub = relaxed ? std::nullopt : std::optional<Rational>(1);
            lay.zbar_var.push_back(lp.add_var(Rational(0), ub, Rational(cell_weight(w, i, j))));
        }
    }
    lay.first_q = static_cast<int>(lp.vars.size());
    for (const auto& r : pool.patterns()) {
        Rational cost = 0;
        if (!frob) {
            BigInt covered = 0;
            for (std::size_t i = 0; i < x.rows(); ++i) {
                if (!r.a.test(i)) continue;
                for (std::size_t j = 0; j < x.cols(); ++j)
                    if (r.b.test(j) && x.is_zero(i, j)) covered += cell_weight(w, i, j);
            }
            cost = spec.rho * Rational(covered);
        }
        std::optional<Rational> ub = relaxed ? std::nullopt : std::optional<Rational>(1);
        int q = lp.add_var(Rational(0), ub, cost);
        if (!relaxed) master.integer_vars.push_back(q);
    }
    if (frob && !relaxed)
        for (int z : lay.zbar_var) master.integer_vars.push_back(z);

    // Coverage rows: xi_ij + sum of covering q >= 1.
    for (std::size_t c = 0; c < lay.one_cells.size(); ++c) {
        auto [i, j] = lay.one_cells[c];
        std::vector<LpTerm> terms{{lay.xi_var[c], Rational(1)}};
        for (std::size_t r = 0; r < pool.size(); ++r)
            if (pool.patterns()[r].covers(i, j))
                terms.push_back({lay.first_q + static_cast<int>(r), Rational(1)});
        lay.one_row.push_back(static_cast<int>(lp.rows.size()));
        lp.add_row(std::move(terms), Relation::GreaterEqual, Rational(1));
    }
    // Weak coupling on the zeros (frobenius mode): sum of covering q <= k z.
    if (frob) {
        for (std::size_t c = 0; c < lay.zero_cells.size(); ++c) {
            auto [i, j] = lay.zero_cells[c];
            std::vector<LpTerm> terms;
            for (std::size_t r = 0; r < pool.size(); ++r)
                if (pool.patterns()[r].covers(i, j))
                    terms.push_back({lay.first_q + static_cast<int>(r), Rational(1)});
            terms.push_back({lay.zbar_var[c], Rational(-static_cast<long long>(k))});
            lay.zero_row.push_back(static_cast<int>(lp.rows.size()));
            lp.add_row(std::move(terms), Relation::LessEqual, Rational(0));
        }
    }
    // Cardinality.
    {
        std::vector<LpTerm> terms;
        for (std::size_t r = 0; r < pool.size(); ++r)
            terms.push_back({lay.first_q + static_cast<int>(r), Rational(1)});
        lay.card_row = static_cast<int>(lp.rows.size());
        lp.add_row(std::move(terms), Relation::LessEqual, Rational(static_cast<long long>(k)));
    }
    return master;
}

std::vector<std::size_t> selected_columns(const MasterModel& master,
                                          const std::vector<double>& assignment) {
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < master.layout.pool_size; ++r)
        if (assignment[master.layout.first_q + r] > 0.5) chosen.push_back(r);
    return chosen;
}

CompactModel build_compact(const WeightedBinaryMatrix& w, std::size_t k, bool relaxed) {
    if (k < 1) throw std::invalid_argument("build_compact: k must be positive");
    const BinaryMatrix& x = w.core;
    CompactModel model;
    model.n = x.rows();
    model.m = x.cols();
    model.k = k;
    LpModel& lp = model.lp;

    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            int v = lp.add_var(Rational(0), Rational(1), Rational(0));
            (void)i;
            if (!relaxed) model.integer_vars.push_back(v);
        }
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t j = 0; j < model.m; ++j) {
            int v = lp.add_var(Rational(0), Rational(1), Rational(0));
            (void)l;
            if (!relaxed) model.integer_vars.push_back(v);
        }
    if (!relaxed) {
        model.branch_priority.assign(lp.vars.size(), 1);
        // Fixing B first makes the a-side row separable.
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < model.m; ++j)
                model.branch_priority[model.b_index(l, j)] = 0;
    }

    // y and z exist for known cells only; missing cells contribute nothing.
    std::vector<std::vector<int>> y_index(model.n, std::vector<int>(k * model.m, -1));
    std::vector<int> z_index(model.n * model.m, -1);
    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < model.m; ++j)
                if (x.is_known(i, j))
                    y_index[i][l * model.m + j] = lp.add_var(Rational(0), Rational(1), Rational(0));
    BigInt offset = 0;
    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t j = 0; j < model.m; ++j) {
            if (!x.is_known(i, j)) continue;
            std::int64_t wij = cell_weight(w, i, j);
            Rational cost = x.is_one(i, j) ? Rational(-wij) : Rational(wij);
            if (x.is_one(i, j)) offset += wij;
            z_index[i * model.m + j] = lp.add_var(Rational(0), Rational(1), cost);
        }
    lp.objective_offset = Rational(offset);

    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t j = 0; j < model.m; ++j) {
            int z = z_index[i * model.m + j];
            if (z < 0) continue;
            std::vector<LpTerm> sum_terms;
            for (std::size_t l = 0; l < k; ++l) {
                int y = y_index[i][l * model.m + j];
                // Boolean product: y <= z <= sum_l y.
                lp.add_row({{y, Rational(1)}, {z, Rational(-1)}}, Relation::LessEqual, Rational(0));
                sum_terms.push_back({y, Rational(-1)});
                // McCormick envelope of y = a * b.
                int a = model.a_index(i, l), b = model.b_index(l, j);
                lp.add_row({{a, Rational(1)}, {b, Rational(1)}, {y, Rational(-1)}},
                           Relation::LessEqual, Rational(1));
                lp.add_row({{y, Rational(1)}, {a, Rational(-1)}}, Relation::LessEqual, Rational(0));
                lp.add_row({{y, Rational(1)}, {b, Rational(-1)}}, Relation::LessEqual, Rational(0));
            }
            sum_terms.push_back({z, Rational(1)});
            lp.add_row(std::move(sum_terms), Relation::LessEqual, Rational(0));
        }
    return model;
}

Factorisation compact_factorisation(const CompactModel& model,
                                    const std::vector<double>& assignment) {
    Factorisation f(model.n, model.m, model.k);
    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t l = 0; l < model.k; ++l)
            if (assignment[model.a_index(i, l)] > 0.5) f.a_col(l).set(i);
    for (std::size_t l = 0; l < model.k; ++l)
        for (std::size_t j = 0; j < model.m; ++j)
            if (assignment[model.b_index(l, j)] > 0.5) f.b_row(l).set(j);
    return f;
}

ExponentialModel build_exponential(const WeightedBinaryMatrix& w, std::size_t k, bool relaxed) {
    const BinaryMatrix& x = w.core;
    if (x.cols() > 12)
        throw std::invalid_argument("build_exponential: m > 12, explicit enumeration refused");
    ExponentialModel model;
    model.n = x.rows();
    model.m = x.cols();
    model.k = k;
    model.t_count = (std::size_t{1} << x.cols()) - 1;
    LpModel& lp = model.lp;

    // beta_t is the binary encoding of t+1 over the m columns.
    auto beta = [&](std::size_t t, std::size_t j) { return ((t + 1) >> j) & 1u; };

    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t t = 0; t < model.t_count; ++t) {
            int v = lp.add_var(Rational(0), relaxed ? std::nullopt : std::optional<Rational>(1),
                               Rational(0));
            (void)i;
            if (!relaxed) model.integer_vars.push_back(v);
        }
    for (std::size_t t = 0; t < model.t_count; ++t) {
        int v = lp.add_var(Rational(0), relaxed ? std::nullopt : std::optional<Rational>(1),
                           Rational(0));
        (void)t;
        if (!relaxed) model.integer_vars.push_back(v);
    }
    std::vector<int> z_index(model.n * model.m, -1);
    BigInt offset = 0;
    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t j = 0; j < model.m; ++j) {
            if (!x.is_known(i, j)) continue;
            std::int64_t wij = cell_weight(w, i, j);
            bool one = x.is_one(i, j);
            if (one) offset += wij;
            // z on the ones needs its unit cap; z on the zeros only its
            // lower bound (the objective pushes it down).
            std::optional<Rational> ub =
                one ? std::optional<Rational>(1)
                    : (relaxed ? std::nullopt : std::optional<Rational>(1));
            z_index[i * model.m + j] =
                lp.add_var(Rational(0), ub, one ? Rational(-wij) : Rational(wij));
        }
    lp.objective_offset = Rational(offset);

    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t j = 0; j < model.m; ++j) {
            int z = z_index[i * model.m + j];
            if (z < 0) continue;
            std::vector<LpTerm> terms;
            for (std::size_t t = 0; t < model.t_count; ++t)
                if (beta(t, j)) terms.push_back({model.alpha_index(i, t), Rational(1)});
            if (x.is_one(i, j)) {
                terms.push_back({z, Rational(-1)});
                // z <= sum_t alpha_it beta_tj
                for (auto& tm : terms) tm.coeff = -tm.coeff;
                lp.add_row(std::move(terms), Relation::LessEqual, Rational(0));
            } else {
                terms.push_back({z, Rational(-static_cast<long long>(k))});
                lp.add_row(std::move(terms), Relation::LessEqual, Rational(0));
            }
        }
    {
        std::vector<LpTerm> terms;
        for (std::size_t t = 0; t < model.t_count; ++t)
            terms.push_back({model.d_index(t), Rational(1)});
        lp.add_row(std::move(terms), Relation::LessEqual, Rational(static_cast<long long>(k)));
    }
    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t t = 0; t < model.t_count; ++t)
            lp.add_row({{model.alpha_index(i, t), Rational(1)}, {model.d_index(t), Rational(-1)}},
                       Relation::LessEqual, Rational(0));
    return model;
}

PricingIpModel build_pricing_ip(const Eigen::MatrixXd& h, const Rank1Pattern* warm) {
    PricingIpModel model;
    model.n = static_cast<std::size_t>(h.rows());
    model.m = static_cast<std::size_t>(h.cols());
    LpModel& lp = model.lp;
    for (std::size_t i = 0; i < model.n + model.m; ++i) {
        int v = lp.add_var(Rational(0), Rational(1), Rational(0));
        model.integer_vars.push_back(v);
    }
    for (std::size_t i = 0; i < model.n; ++i)
        for (std::size_t j = 0; j < model.m; ++j) {
            double hij = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (hij == 0.0) continue;
            int y = lp.add_var(Rational(0), Rational(1), -Rational::from_double(hij));
            int a = model.a_index(i), b = model.b_index(j);
            if (hij > 0) {
                lp.add_row({{y, Rational(1)}, {a, Rational(-1)}}, Relation::LessEqual, Rational(0));
                lp.add_row({{y, Rational(1)}, {b, Rational(-1)}}, Relation::LessEqual, Rational(0));
            } else {
                lp.add_row({{a, Rational(1)}, {b, Rational(1)}, {y, Rational(-1)}},
                           Relation::LessEqual, Rational(1));
            }
        }
    if (warm && !warm->empty()) {
        std::vector<double> assignment(lp.vars.size(), 0.0);
        for (std::size_t i = 0; i < model.n; ++i)
            if (warm->a.test(i)) assignment[model.a_index(i)] = 1.0;
        for (std::size_t j = 0; j < model.m; ++j)
            if (warm->b.test(j)) assignment[model.b_index(j)] = 1.0;
        model.warm = std::move(assignment);
    }
    return model;
}

Rational PricingInput::exact_value(const Rank1Pattern& p) const {
    const auto n = static_cast<std::size_t>(h.rows());
    const auto m = static_cast<std::size_t>(h.cols());
    Rational v = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!p.a.test(i)) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (!p.b.test(j)) continue;
            if (!h_exact.empty())
                v += h_exact[i * m + j];
            else
                v += Rational::from_double(h(static_cast<Eigen::Index>(i),
                                             static_cast<Eigen::Index>(j)));
        }
    }
    return v;
}

PricingInput make_pricing_input(const MasterModel& master, const WeightedBinaryMatrix& w,
                                const LpSolution& sol, const ExactLpAudit* audit) {
    const MasterLayout& lay = master.layout;
    const BinaryMatrix& x = w.core;
    PricingInput in;
    in.mode = lay.mode;
    in.h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(x.rows()),
                                 static_cast<Eigen::Index>(x.cols()));
    const bool exact = audit && audit->basis_ok && audit->primal_feasible && audit->dual_feasible;
    in.exact = exact;
    if (exact) in.h_exact.assign(x.rows() * x.cols(), Rational(0));

    auto put = [&](std::size_t i, std::size_t j, double v, const Rational& ve) {
        in.h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
        if (exact) in.h_exact[i * x.cols() + j] = ve;
    };

    for (std::size_t c = 0; c < lay.one_cells.size(); ++c) {
        auto [i, j] = lay.one_cells[c];
        double p = sol.duals[lay.one_row[c]];
        // Duals of >= rows are nonnegative at optimality; clip float noise.
        double wij = static_cast<double>(cell_weight(w, i, j));
        p = std::clamp(p, 0.0, wij);
        put(i, j, p, exact ? audit->duals[lay.one_row[c]] : Rational(0));
    }
    if (lay.mode == ObjectiveMode::Frobenius) {
        for (std::size_t c = 0; c < lay.zero_cells.size(); ++c) {
            auto [i, j] = lay.zero_cells[c];
            double s = -sol.duals[lay.zero_row[c]];
            s = std::max(s, 0.0);
            put(i, j, -s, exact ? audit->duals[lay.zero_row[c]] : Rational(0));
        }
    } else {
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j)
                if (x.is_zero(i, j)) {
                    Rational ve = -(lay.rho * Rational(cell_weight(w, i, j)));
                    put(i, j, ve.to_double(), ve);
                }
    }
    in.mu = std::max(0.0, -sol.duals[lay.card_row]);
    in.mu_exact = exact ? -audit->duals[lay.card_row] : Rational::from_double(in.mu);
    return in;
}

}  // namespace kbmf
