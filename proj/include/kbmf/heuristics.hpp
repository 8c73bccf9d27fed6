#pragma once

#include "kbmf/matrix.hpp"
#include "kbmf/preprocess.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

namespace kbmf {

// +1 on ones, -1 on known zeros, 0 on missing cells (scaled by the cell
// weight in the weighted overload).
Eigen::MatrixXd signed_matrix(const BinaryMatrix& x);
Eigen::MatrixXd signed_matrix(const WeightedBinaryMatrix& w);

// One pass of the sequential rank-1 extraction: run the BBQP portfolio on H,
// keep the rectangle, zero the covered cells, repeat up to k times.  Returns
// the (possibly fewer than k) extracted patterns.
std::vector<Rank1Pattern> k_greedy_extract(Eigen::MatrixXd h, std::size_t k, std::uint64_t seed);

// Full heuristic: best factorisation by Frobenius error over every seed, run
// on the plain matrix and (when preprocess_first) also on the reduced one.
// Ties keep the earliest seed, plain variant first.
Factorisation k_greedy(const BinaryMatrix& x, std::size_t k, std::span<const std::uint64_t> seeds,
                       bool preprocess_first = true);

std::vector<std::uint64_t> k_greedy_seeds(std::uint64_t base, std::size_t count);

}  // namespace kbmf
