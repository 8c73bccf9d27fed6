#pragma once

#include "kbmf/formulations.hpp"
#include "kbmf/matrix.hpp"
#include "kbmf/milp.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace kbmf {

enum class GreedyOrdering { Original, Revised, OriginalPerturbed, RevisedPerturbed, Random };

struct PricingOutcome {
    Rank1Pattern pattern;  // empty when no positive-value rectangle was found
    double value = 0.0;    // a^T H b of the returned pattern
    std::optional<double> exact_bound;  // valid upper bound on max a^T H b
};

// Two-phase greedy for max a^T H b (rows fixed first in the given ordering,
// then the optimal column response).  transpose=true runs on H^T and swaps
// the sides back.
PricingOutcome greedy_bbqp(const Eigen::MatrixXd& h, GreedyOrdering ordering, bool transpose,
                           std::uint64_t seed = 0);

// Alternating best-response polish from a start pattern; the value never
// decreases across a half-step.
PricingOutcome alternate(const Eigen::MatrixXd& h, const Rank1Pattern& start);

// The 30-variant portfolio: original and revised orderings, their transposes
// and perturbed versions, plus one random ordering per seed, each polished by
// the alternating heuristic.  Ties keep the first member found.
PricingOutcome portfolio(const Eigen::MatrixXd& h, std::span<const std::uint64_t> seeds);
std::vector<PricingOutcome> portfolio_members(const Eigen::MatrixXd& h,
                                              std::span<const std::uint64_t> seeds);

// The default 22 random-ordering seeds for a run.
std::vector<std::uint64_t> portfolio_seeds(std::uint64_t seed, std::uint64_t stream);

// Budgeted exact search over build_pricing_ip, warm-started by the portfolio
// winner.  exact_bound is the proven bound (equal to value at optimality).
PricingOutcome exact_bbqp(const Eigen::MatrixXd& h, const MilpBudget& budget,
                          const PricingOutcome& warm);

}  // namespace kbmf
