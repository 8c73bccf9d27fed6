#pragma once

#include "kbmf/formulations.hpp"
#include "kbmf/heuristics.hpp"
#include "kbmf/milp.hpp"
#include "kbmf/objective.hpp"
#include "kbmf/preprocess.hpp"
#include "kbmf/pricing.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kbmf {

struct CgConfig {
    ObjectiveSpec objective;
    std::size_t k = 2;
    double time_limit_seconds = 600.0;
    int columns_per_iter = 2;
    std::vector<Rank1Pattern> warm_start_patterns;
    std::uint64_t seed = 0;
    enum class ExactPolicy { Always, OnHeuristicFailure, Never };
    ExactPolicy exact_policy = ExactPolicy::OnHeuristicFailure;
    double exact_time_seconds = 25.0;
    std::int64_t exact_node_limit = 50000;
    int max_iterations = 100000;
    // Masters larger than this skip the exact rational audit (the dual bound
    // then rests on floating duals and is flagged inexact).
    std::size_t exact_audit_row_limit = 2000;
};

struct CgIterRecord {
    int iteration = 0;
    double zeta_rmlp = 0.0;
    std::string zeta_rmlp_exact;  // empty when the audit was skipped
    double omega = 0.0;           // best reduced cost seen (or its lower bound)
    double dual_bound = 0.0;
    std::size_t pool_size = 0;
    bool exact_pricing = false;
    int columns_added = 0;
    double elapsed_seconds = 0.0;
};

enum class CgStatus { OptimalLp, CeilingStop, TimeLimit, Stalled };

struct CgState {
    std::vector<Rank1Pattern> pool;
    std::vector<CgIterRecord> log;
    Rational best_dual_bound;  // valid lower bound on the master LP and IP
    bool bound_exact = true;
    Rational final_lp_value;
    double final_lp_double = 0.0;
    bool final_lp_exact = false;
    CgStatus status = CgStatus::Stalled;
    bool objective_integral = false;
    std::size_t iterations = 0;
};

// Column generation on the restricted master: solve, price, add up to
// columns_per_iter distinct-support columns, stop on proven optimality, the
// integral ceiling rule, or the time limit.  Heuristic-pricing iterations
// never move the dual bound.
CgState run_cg(const WeightedBinaryMatrix& w, const CgConfig& cfg);

struct IntegralOutcome {
    Factorisation factorisation;  // reduced-space, padded to k factors
    std::vector<std::size_t> selected;
    MilpResult milp;
    Rational objective;  // exact value under the master's objective
    Rational zeta_f;     // exact Frobenius re-evaluation on the same instance
};

// Restricted master IP over the generated pool.
IntegralOutcome integral_stage(const WeightedBinaryMatrix& w, std::size_t k,
                               const std::vector<Rank1Pattern>& pool, const ObjectiveSpec& spec,
                               const MilpBudget& budget,
                               const std::vector<std::size_t>* warm_selection = nullptr);

struct Certificate {
    bool proven = false;
    Rational gap;
};

// The IP value is optimal when it meets the ceiling of the dual bound
// (integral objectives) or the bound itself (fractional objectives).
Certificate certify_optimality(const CgState& state, const Rational& ip_objective);

struct PipelineConfig {
    std::size_t k = 2;
    ObjectiveSpec objective;
    bool preprocess = true;
    bool cold_start = false;       // skip the k-Greedy warm start
    std::size_t kgreedy_seeds = 8;
    std::uint64_t seed = 0;
    double cg_time_seconds = 600.0;
    double ip_time_seconds = 300.0;
    CgConfig::ExactPolicy exact_policy = CgConfig::ExactPolicy::OnHeuristicFailure;
    double exact_time_seconds = 25.0;
    std::int64_t exact_node_limit = 50000;
};

struct PipelineResult {
    WeightedBinaryMatrix reduced;
    CgState cg;
    IntegralOutcome integral;
    Factorisation factorisation;  // original shape
    Rational zeta_f;              // exact, on the original matrix
    std::optional<Rational> zeta_rho;
    bool proven = false;
    Rational gap;
    bool used_kgreedy_fallback = false;
    double kgreedy_seconds = 0.0, cg_seconds = 0.0, ip_seconds = 0.0;
};

// Full solve: preprocess, k-Greedy warm start, column generation, restricted
// master IP, certificate.  The reported factorisation is never worse (in
// Frobenius error) than the k-Greedy warm start.
PipelineResult solve_cg_pipeline(const BinaryMatrix& x, const PipelineConfig& cfg);

struct CipResult {
    WeightedBinaryMatrix reduced;
    MilpResult milp;
    Factorisation factorisation;  // original shape
    Rational zeta_f;
    Rational dual_bound;
    bool proven = false;
    Rational gap;
    double seconds = 0.0;
};

// Compact-IP solve with a k-Greedy warm start (Frobenius objective only).
CipResult solve_cip(const BinaryMatrix& x, std::size_t k, bool preprocess, std::uint64_t seed,
                    std::size_t kgreedy_seeds, double time_limit_seconds);

}  // namespace kbmf
