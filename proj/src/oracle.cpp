#include "kbmf/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace kbmf {

namespace {

// Cost of assigning pattern `a` (bitmask over the k factors) to row i, given
// the candidate B-rows.  Exact integer arithmetic scaled by the rho
// denominator is done by the caller; here costs are split into (ones missed
// weighted, zero covers weighted).
struct RowCost {
    std::int64_t missed_ones = 0;
    std::int64_t zero_covers = 0;  // sum over zero cells of weight * cover count
    std::int64_t mismatches = 0;   // frobenius: weighted mismatched cells
};

RowCost row_cost(const BinaryMatrix& x, std::size_t i, unsigned a_mask,
                 const std::vector<unsigned>& b_rows, std::int64_t ri,
                 std::span<const std::int64_t> col_weights) {
    RowCost c;
    for (std::size_t j = 0; j < x.cols(); ++j) {
        if (x.is_missing(i, j)) continue;
        int covers = 0;
        for (std::size_t l = 0; l < b_rows.size(); ++l)
            if ((a_mask >> l) & 1u && (b_rows[l] >> j) & 1u) ++covers;
        std::int64_t w = ri * (col_weights.empty() ? 1 : col_weights[j]);
        if (x.is_one(i, j)) {
            if (covers == 0) {
                c.missed_ones += w;
                c.mismatches += w;
            }
        } else {
            c.zero_covers += w * covers;
            if (covers > 0) c.mismatches += w;
        }
    }
    return c;
}

}  // namespace

KbmfOptimum brute_force_kbmf(const BinaryMatrix& x, std::size_t k, const ObjectiveSpec& spec,
                             std::span<const std::int64_t> row_weights,
                             std::span<const std::int64_t> col_weights) {
    const std::size_t n = x.rows(), m = x.cols();
    if (k < 1) throw std::invalid_argument("brute_force_kbmf: k must be positive");
    if (m * k > 20) throw std::invalid_argument("brute_force_kbmf: instance too large (m*k > 20)");

    const unsigned row_limit = 1u << m;  // candidate B-rows 0 .. 2^m - 1, zero row = padding
    std::vector<unsigned> b_rows(k, 0);
    Rational best;
    bool have_best = false;
    std::vector<unsigned> best_b;
    std::vector<unsigned> best_a;
    std::vector<unsigned> cur_a(n);

    // Nondecreasing sequences of B-rows enumerate each multiset once.
    std::vector<unsigned> stack(k, 0);
    while (true) {
        // Evaluate the current B: each row of A is optimised independently.
        Rational total = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::int64_t ri = row_weights.empty() ? 1 : row_weights[i];
            Rational row_best;
            bool row_have = false;
            unsigned row_arg = 0;
            for (unsigned a_mask = 0; a_mask < (1u << k); ++a_mask) {
                RowCost c = row_cost(x, i, a_mask, stack, ri, col_weights);
                Rational v = spec.mode == ObjectiveMode::Frobenius
                                 ? Rational(c.mismatches)
                                 : Rational(c.missed_ones) + spec.rho * Rational(c.zero_covers);
                if (!row_have || v < row_best) {
                    row_best = v;
                    row_have = true;
                    row_arg = a_mask;
                }
            }
            total += row_best;
            cur_a[i] = row_arg;
        }
        if (!have_best || total < best) {
            best = total;
            have_best = true;
            best_b = stack;
            best_a = cur_a;
        }

        // Advance to the next nondecreasing sequence.
        std::size_t pos = k;
        while (pos > 0 && stack[pos - 1] + 1 == row_limit) --pos;
        if (pos == 0) break;
        unsigned v = stack[pos - 1] + 1;
        for (std::size_t l = pos - 1; l < k; ++l) stack[l] = v;
    }

    Factorisation f(n, m, k);
    for (std::size_t l = 0; l < k; ++l)
        for (std::size_t j = 0; j < m; ++j)
            if ((best_b[l] >> j) & 1u) f.b_row(l).set(j);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            if ((best_a[i] >> l) & 1u) f.a_col(l).set(i);
    return {best, std::move(f)};
}

BbqpOptimum brute_force_bbqp(const Eigen::MatrixXd& h) {
    const auto n = static_cast<std::size_t>(h.rows());
    const auto m = static_cast<std::size_t>(h.cols());
    if (n + m > 22) throw std::invalid_argument("brute_force_bbqp: instance too large (n+m > 22)");
    BbqpOptimum best;
    best.pattern.a = BitVec(n);
    best.pattern.b = BitVec(m);
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        Eigen::RowVectorXd s = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1u) s += h.row(static_cast<Eigen::Index>(i));
        double v = s.cwiseMax(0.0).sum();
        if (v > best.value) {
            best.value = v;
            best.pattern.a = BitVec(n);
            best.pattern.b = BitVec(m);
            for (std::size_t i = 0; i < n; ++i)
                if ((mask >> i) & 1u) best.pattern.a.set(i);
            for (std::size_t j = 0; j < m; ++j)
                if (s(static_cast<Eigen::Index>(j)) > 0) best.pattern.b.set(j);
        }
    }
    return best;
}

std::size_t isolation_number(const BinaryMatrix& x) {
    struct CellRef {
        std::size_t i, j;
    };
    std::vector<CellRef> ones;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            if (x.is_one(i, j)) ones.push_back({i, j});
    const std::size_t e = ones.size();
    if (e == 0) return 0;
    if (e > 400) throw std::invalid_argument("isolation_number: too many ones");

    // compat[u] marks the ones that may share an isolated set with u.
    std::vector<BitVec> compat(e, BitVec(e));
    for (std::size_t u = 0; u < e; ++u)
        for (std::size_t v = u + 1; v < e; ++v) {
            auto [i1, j1] = ones[u];
            auto [i2, j2] = ones[v];
            bool ok = i1 != i2 && j1 != j2 &&
                      (x.is_zero(i1, j2) || x.is_zero(i2, j1));
            if (ok) {
                compat[u].set(v);
                compat[v].set(u);
            }
        }

    std::size_t best = 0;
    // Max clique, branch and bound over candidate bitsets.
    auto extend = [&](auto&& self, BitVec cand, std::size_t depth) -> void {
        if (depth + cand.count() <= best) return;
        for (std::size_t u = 0; u < e; ++u) {
            if (!cand.test(u)) continue;
            if (depth + cand.count() <= best) return;
            cand.reset(u);
            BitVec next = cand;
            next &= compat[u];
            best = std::max(best, depth + 1);
            if (next.any()) self(self, next, depth + 1);
        }
    };
    BitVec all(e);
    for (std::size_t u = 0; u < e; ++u) all.set(u);
    extend(extend, all, 0);
    return best;
}

std::size_t boolean_rank_small(const BinaryMatrix& x) {
    if (x.count_ones() == 0)
        throw std::invalid_argument("boolean_rank_small: zero matrix has rank 0");
    for (std::size_t k = 1; x.cols() * k <= 20; ++k) {
        auto opt = brute_force_kbmf(x, k, ObjectiveSpec::frobenius());
        if (opt.objective.is_zero()) return k;
    }
    throw std::invalid_argument("boolean_rank_small: guard exceeded before exact cover found");
}

}  // namespace kbmf
