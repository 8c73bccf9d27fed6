#pragma once

#include "kbmf/matrix.hpp"
#include "kbmf/preprocess.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kbmf {

struct SyntheticInstance {
    BinaryMatrix x;
    Factorisation planted;  // the kappa-factor pair that generated X (pre-noise)
};

// Random matrix of Boolean rank at most kappa with an expected sigma_pct
// percentage of zeros; each entry is then flipped independently with
// probability noise_pct/100.  Deterministic in (all parameters, seed).
SyntheticInstance generate_synthetic_with_factors(std::size_t n, std::size_t m, std::size_t kappa,
                                                  double sigma_pct, double noise_pct,
                                                  std::uint64_t seed);

BinaryMatrix generate_synthetic(std::size_t n, std::size_t m, std::size_t kappa, double sigma_pct,
                                double noise_pct, std::uint64_t seed);

// Hides floor(missing_pct * n * m / 100) uniformly chosen cells.
BinaryMatrix apply_mask(const BinaryMatrix& x, double missing_pct, std::uint64_t seed);

// The reduced tight instance X'(k) with its weight vector: the optimal rank-k
// factorisations satisfy zeta(1)* = k * zetaF* = k.  k = 2 yields the 3x3
// core with weights [3, 1, 3]; odd k is derived from k+1 by deleting the
// first row and column.
WeightedBinaryMatrix build_tight_instance(std::size_t k);

enum class ColumnKind { Binary, Categorical, Numeric };

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::Binary;
};

// One-hot encodes categorical columns, median-splits numeric columns (median
// over non-missing values), passes binary columns through.  A missing source
// value leaves every derived column missing in that row.
BinaryMatrix binarize_categorical(const std::vector<std::vector<std::string>>& table,
                                  const std::vector<ColumnSpec>& spec,
                                  const std::string& missing_marker = "?");

// Text format: "n m [weighted]" header, n rows over {0,1,?}, and for weighted
// files one line of row weights plus one of column weights.
struct MatrixFile {
    BinaryMatrix x;
    std::optional<std::vector<std::int64_t>> row_weights;
    std::optional<std::vector<std::int64_t>> col_weights;
};

MatrixFile read_matrix(const std::string& path);
void write_matrix(const std::string& path, const BinaryMatrix& x);
void write_matrix(const std::string& path, const WeightedBinaryMatrix& w);

// Column-type sidecar: one "name kind" pair per line, kind in
// {binary, categorical, numeric}.
std::vector<ColumnSpec> read_column_spec(const std::string& path);
std::vector<std::vector<std::string>> read_delimited(const std::string& path, char delim = ',');

}  // namespace kbmf
