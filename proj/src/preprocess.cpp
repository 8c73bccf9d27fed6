#include "kbmf/preprocess.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace kbmf {

namespace {

using RowKey = std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>;

RowKey row_key(const BinaryMatrix& x, std::size_t i) {
    return {x.ones_row(i).words(), x.missing_row(i).words()};
}

RowKey col_key(const BinaryMatrix& x, const std::vector<std::size_t>& kept_rows, std::size_t j) {
    BitVec ones(kept_rows.size()), miss(kept_rows.size());
    for (std::size_t r = 0; r < kept_rows.size(); ++r) {
        if (x.is_one(kept_rows[r], j)) ones.set(r);
        if (x.is_missing(kept_rows[r], j)) miss.set(r);
    }
    return {ones.words(), miss.words()};
}

}  // namespace

bool WeightedBinaryMatrix::is_identity() const {
    if (orig_rows != core.rows() || orig_cols != core.cols()) return false;
    for (auto w : row_weights)
        if (w != 1) return false;
    for (auto w : col_weights)
        if (w != 1) return false;
    return true;
}

WeightedBinaryMatrix WeightedBinaryMatrix::unweighted(const BinaryMatrix& x) {
    WeightedBinaryMatrix w;
    w.core = x;
    w.row_weights.assign(x.rows(), 1);
    w.col_weights.assign(x.cols(), 1);
    w.row_map.resize(x.rows());
    w.col_map.resize(x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i) w.row_map[i] = i;
    for (std::size_t j = 0; j < x.cols(); ++j) w.col_map[j] = j;
    w.dropped_row_missing.assign(x.rows(), BitVec());
    w.dropped_col_missing.assign(x.cols(), BitVec());
    w.orig_rows = x.rows();
    w.orig_cols = x.cols();
    return w;
}

WeightedBinaryMatrix WeightedBinaryMatrix::with_weights(const BinaryMatrix& x,
                                                        std::vector<std::int64_t> row_w,
                                                        std::vector<std::int64_t> col_w) {
    if (row_w.size() != x.rows() || col_w.size() != x.cols())
        throw std::invalid_argument("with_weights: weight length mismatch");
    for (auto v : row_w)
        if (v < 1) throw std::invalid_argument("with_weights: weights must be positive");
    for (auto v : col_w)
        if (v < 1) throw std::invalid_argument("with_weights: weights must be positive");
    WeightedBinaryMatrix w = unweighted(x);
    w.row_weights = std::move(row_w);
    w.col_weights = std::move(col_w);
    return w;
}

WeightedBinaryMatrix reduce(const BinaryMatrix& x) {
    if (x.count_missing() == x.rows() * x.cols())
        throw std::invalid_argument("reduce: all cells missing, objective undefined");

    WeightedBinaryMatrix w;
    w.orig_rows = x.rows();
    w.orig_cols = x.cols();
    w.row_map.assign(x.rows(), kDroppedIndex);
    w.col_map.assign(x.cols(), kDroppedIndex);
    w.dropped_row_missing.assign(x.rows(), BitVec());
    w.dropped_col_missing.assign(x.cols(), BitVec());

    // A zero row has no ones among its known cells; it is dropped and its
    // missing mask recorded for reconstruction.
    std::vector<std::size_t> kept_rows, kept_cols;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        if (x.ones_row(i).none())
            w.dropped_row_missing[i] = x.missing_row(i);
        else
            kept_rows.push_back(i);
    }
    for (std::size_t j = 0; j < x.cols(); ++j) {
        bool has_one = false;
        BitVec miss(x.rows());
        for (std::size_t i = 0; i < x.rows(); ++i) {
            if (x.is_one(i, j)) has_one = true;
            if (x.is_missing(i, j)) miss.set(i);
        }
        if (has_one)
            kept_cols.push_back(j);
        else
            w.dropped_col_missing[j] = miss;
    }
    if (kept_rows.empty() || kept_cols.empty())
        throw std::invalid_argument("reduce: matrix has no ones among known cells");

    // Group identical kept rows (missing mask is part of the identity).
    std::map<RowKey, std::size_t> row_groups;
    std::vector<std::size_t> row_reps;
    std::vector<std::int64_t> row_mult;
    for (auto i : kept_rows) {
        auto key = row_key(x, i);
        auto it = row_groups.find(key);
        if (it == row_groups.end()) {
            it = row_groups.emplace(key, row_reps.size()).first;
            row_reps.push_back(i);
            row_mult.push_back(0);
        }
        w.row_map[i] = it->second;
        ++row_mult[it->second];
    }

    // Column identity evaluated on the kept rows only; dropped zero rows are
    // constant across columns so this does not merge distinguishable columns.
    std::map<RowKey, std::size_t> col_groups;
    std::vector<std::size_t> col_reps;
    std::vector<std::int64_t> col_mult;
    for (auto j : kept_cols) {
        auto key = col_key(x, kept_rows, j);
        auto it = col_groups.find(key);
        if (it == col_groups.end()) {
            it = col_groups.emplace(key, col_reps.size()).first;
            col_reps.push_back(j);
            col_mult.push_back(0);
        }
        w.col_map[j] = it->second;
        ++col_mult[it->second];
    }

    w.core = BinaryMatrix(row_reps.size(), col_reps.size());
    for (std::size_t r = 0; r < row_reps.size(); ++r)
        for (std::size_t c = 0; c < col_reps.size(); ++c)
            w.core.set(r, c, x.at(row_reps[r], col_reps[c]));
    w.row_weights = std::move(row_mult);
    w.col_weights = std::move(col_mult);
    return w;
}

Factorisation expand(const WeightedBinaryMatrix& w, const Factorisation& reduced) {
    if (reduced.n() != w.core.rows() || reduced.m() != w.core.cols())
        throw std::invalid_argument("expand: factorisation shaped for a different core");
    Factorisation f(w.orig_rows, w.orig_cols, reduced.k());
    for (std::size_t l = 0; l < reduced.k(); ++l) {
        for (std::size_t i = 0; i < w.orig_rows; ++i)
            if (w.row_map[i] != kDroppedIndex && reduced.a_col(l).test(w.row_map[i]))
                f.a_col(l).set(i);
        for (std::size_t j = 0; j < w.orig_cols; ++j)
            if (w.col_map[j] != kDroppedIndex && reduced.b_row(l).test(w.col_map[j]))
                f.b_row(l).set(j);
    }
    return f;
}

BinaryMatrix reconstruct(const WeightedBinaryMatrix& w) {
    BinaryMatrix x(w.orig_rows, w.orig_cols);
    for (std::size_t i = 0; i < w.orig_rows; ++i) {
        bool row_dropped = w.row_map[i] == kDroppedIndex;
        for (std::size_t j = 0; j < w.orig_cols; ++j) {
            if (row_dropped) {
                x.set(i, j, w.dropped_row_missing[i].test(j) ? Cell::Missing : Cell::Zero);
            } else if (w.col_map[j] == kDroppedIndex) {
                x.set(i, j, w.dropped_col_missing[j].test(i) ? Cell::Missing : Cell::Zero);
            } else {
                x.set(i, j, w.core.at(w.row_map[i], w.col_map[j]));
            }
        }
    }
    return x;
}

}  // namespace kbmf
