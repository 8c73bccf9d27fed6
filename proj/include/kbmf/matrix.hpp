#pragma once

#include "kbmf/bits.hpp"

#include <cstddef>
#include <vector>

namespace kbmf {

enum class Cell : unsigned char { Zero = 0, One = 1, Missing = 2 };

// Dense tri-valued binary matrix.  Ones and the missing mask are stored as
// separate per-row bit vectors; a cell is never simultaneously one and
// missing.  Immutable in spirit: construct, fill, then share freely.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Cell at(std::size_t i, std::size_t j) const {
        if (missing_[i].test(j)) return Cell::Missing;
        return ones_[i].test(j) ? Cell::One : Cell::Zero;
    }
    bool is_one(std::size_t i, std::size_t j) const { return ones_[i].test(j); }
    bool is_zero(std::size_t i, std::size_t j) const {
        return !ones_[i].test(j) && !missing_[i].test(j);
    }
    bool is_missing(std::size_t i, std::size_t j) const { return missing_[i].test(j); }
    bool is_known(std::size_t i, std::size_t j) const { return !missing_[i].test(j); }

    void set(std::size_t i, std::size_t j, Cell v);

    const BitVec& ones_row(std::size_t i) const { return ones_[i]; }
    const BitVec& missing_row(std::size_t i) const { return missing_[i]; }

    std::size_t count_ones() const;
    std::size_t count_missing() const;
    bool has_missing() const { return count_missing() > 0; }

    friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.ones_ == b.ones_ &&
               a.missing_ == b.missing_;
    }

    static BinaryMatrix from_rows(const std::vector<std::vector<int>>& rows);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<BitVec> ones_;
    std::vector<BitVec> missing_;
};

// Rank-1 binary matrix a * b^T given by its nonzero row and column supports.
struct Rank1Pattern {
    BitVec a;  // length n
    BitVec b;  // length m

    bool covers(std::size_t i, std::size_t j) const { return a.test(i) && b.test(j); }
    bool empty() const { return a.none() || b.none(); }

    friend bool operator==(const Rank1Pattern& x, const Rank1Pattern& y) {
        return x.a == y.a && x.b == y.b;
    }
    std::size_t hash() const { return a.hash() * 0x9e3779b97f4a7c15ULL ^ b.hash(); }
};

// Rank-k factorisation: A is n x k, B is k x m, both binary.  Stored as the k
// (a_l, b_l) factor pairs; factor l may be all-zero (padding).
class Factorisation {
public:
    Factorisation() = default;
    Factorisation(std::size_t n, std::size_t m, std::size_t k);

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }
    std::size_t k() const { return k_; }

    const BitVec& a_col(std::size_t l) const { return a_cols_[l]; }
    const BitVec& b_row(std::size_t l) const { return b_rows_[l]; }
    BitVec& a_col(std::size_t l) { return a_cols_[l]; }
    BitVec& b_row(std::size_t l) { return b_rows_[l]; }

    // Entry count of A * B^T covers at (i, j) under standard arithmetic.
    std::size_t cover_count(std::size_t i, std::size_t j) const;

private:
    std::size_t n_ = 0, m_ = 0, k_ = 0;
    std::vector<BitVec> a_cols_;  // k vectors of length n
    std::vector<BitVec> b_rows_;  // k vectors of length m
};

// Boolean product A o B; the result has no missing cells.
BinaryMatrix boolean_product(const Factorisation& f);

// Assembles a rank-k factorisation from up to k patterns of a pool, padding
// the remaining factors with zero columns/rows.  Throws std::out_of_range on
// a bad pool index and std::invalid_argument when more than k are selected.
Factorisation patterns_to_factorisation(const std::vector<Rank1Pattern>& pool,
                                        const std::vector<std::size_t>& selected, std::size_t n,
                                        std::size_t m, std::size_t k);

// Number of selected patterns whose support contains (i, j).
std::size_t covers_count(const std::vector<Rank1Pattern>& pool,
                         const std::vector<std::size_t>& selected, std::size_t i, std::size_t j);

}  // namespace kbmf
