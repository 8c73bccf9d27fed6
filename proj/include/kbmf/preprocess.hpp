#pragma once

#include "kbmf/matrix.hpp"

#include <cstdint>
#include <vector>

namespace kbmf {

constexpr std::size_t kDroppedIndex = static_cast<std::size_t>(-1);

// Deduplicated instance: core has no all-zero and no duplicate rows/columns,
// row/col weights count the multiplicity of each representative in the
// original matrix.  Dropped (all-zero) rows and columns keep their missing
// masks so the original matrix can be reconstructed bit-exactly.
struct WeightedBinaryMatrix {
    BinaryMatrix core;
    std::vector<std::int64_t> row_weights;  // length core.rows(), all >= 1
    std::vector<std::int64_t> col_weights;  // length core.cols(), all >= 1
    std::vector<std::size_t> row_map;       // original row -> core row, kDroppedIndex if dropped
    std::vector<std::size_t> col_map;       // original col -> core col
    std::vector<BitVec> dropped_row_missing;  // per original row; empty BitVec if kept
    std::vector<BitVec> dropped_col_missing;  // per original col (indexed by original rows)
    std::size_t orig_rows = 0;
    std::size_t orig_cols = 0;

    bool is_identity() const;

    // Wraps a matrix as its own core with unit weights (no folding).
    static WeightedBinaryMatrix unweighted(const BinaryMatrix& x);
    // Attaches explicit weights to a matrix without any folding (file input).
    static WeightedBinaryMatrix with_weights(const BinaryMatrix& x,
                                             std::vector<std::int64_t> row_w,
                                             std::vector<std::int64_t> col_w);
};

// Folds duplicate rows/columns (tri-valued identity, missing is its own
// symbol) and drops all-zero rows/columns.  Rejects a matrix whose cells are
// all missing.
WeightedBinaryMatrix reduce(const BinaryMatrix& x);

// Lifts a factorisation of the reduced instance back to the original shape:
// duplicated rows share their representative's A-row, dropped rows get
// all-zero rows (and symmetrically for columns of B).
Factorisation expand(const WeightedBinaryMatrix& w, const Factorisation& reduced);

// Rebuilds the original matrix from the reduced instance (round-trip check).
BinaryMatrix reconstruct(const WeightedBinaryMatrix& w);

}  // namespace kbmf
