#pragma once

#include "kbmf/matrix.hpp"
#include "kbmf/objective.hpp"

#include <Eigen/Dense>

#include <span>
#include <utility>

namespace kbmf {

struct KbmfOptimum {
    Rational objective;
    Factorisation factorisation;
};

// Exhaustive k-BMF: enumerates canonical multisets of B-rows (sorted, so the
// k! permutation symmetry is collapsed) and solves each row of A
// independently.  Requires m * k <= 20.
KbmfOptimum brute_force_kbmf(const BinaryMatrix& x, std::size_t k, const ObjectiveSpec& spec,
                             std::span<const std::int64_t> row_weights = {},
                             std::span<const std::int64_t> col_weights = {});

struct BbqpOptimum {
    double value = 0.0;  // max over a, b binary of a^T H b (zero vectors allowed)
    Rank1Pattern pattern;
};

// Exhaustive BBQP: outer loop over a in {0,1}^n, inner maximisation in closed
// form.  Requires n + m <= 22.
BbqpOptimum brute_force_bbqp(const Eigen::MatrixXd& h);

// Exact isolation number i(X): maximum clique on the pairwise-isolation
// compatibility graph of the ones of X.  Missing cells never isolate a pair.
std::size_t isolation_number(const BinaryMatrix& x);

// Least k with zero factorisation error; bounded by the brute-force guard.
std::size_t boolean_rank_small(const BinaryMatrix& x);

}  // namespace kbmf
