#include "kbmf/colgen.hpp"

#include "kbmf/data_io.hpp"
#include "kbmf/oracle.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace kbmf;

namespace {

ColumnPool full_pool(std::size_t n, std::size_t m) {
    ColumnPool pool;
    for (unsigned am = 1; am < (1u << n); ++am)
        for (unsigned bm = 1; bm < (1u << m); ++bm) {
            Rank1Pattern p{BitVec(n), BitVec(m)};
            for (std::size_t i = 0; i < n; ++i)
                if ((am >> i) & 1u) p.a.set(i);
            for (std::size_t j = 0; j < m; ++j)
                if ((bm >> j) & 1u) p.b.set(j);
            pool.insert(std::move(p));
        }
    return pool;
}

double full_pool_lp(const BinaryMatrix& x, std::size_t k, const ObjectiveSpec& spec) {
    auto w = WeightedBinaryMatrix::unweighted(x);
    MasterModel master = build_master(w, k, spec, full_pool(x.rows(), x.cols()), true);
    LpSolution sol = solve_lp(master.lp);
    REQUIRE(sol.status == LpStatus::Optimal);
    return sol.objective;
}

CgConfig exact_cfg(const ObjectiveSpec& spec, std::size_t k) {
    CgConfig cfg;
    cfg.objective = spec;
    cfg.k = k;
    cfg.exact_policy = CgConfig::ExactPolicy::Always;
    cfg.seed = 17;
    return cfg;
}

}  // namespace

TEST_CASE("CG with exact pricing reaches the zero master LP on J4-I4 at k=3") {
    BinaryMatrix x = test::j4_minus_i4();
    auto w = WeightedBinaryMatrix::unweighted(x);
    CgState state = run_cg(w, exact_cfg(ObjectiveSpec::frobenius(), 3));
    CHECK((state.status == CgStatus::OptimalLp || state.status == CgStatus::CeilingStop));
    CHECK(state.final_lp_double == doctest::Approx(0.0).epsilon(1e-6).scale(1.0));
    CHECK(state.final_lp_value == Rational(0));
}

TEST_CASE("CG matches the full-pool LP optimum on tiny instances") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        BinaryMatrix x = test::random_binary(4, 4, 0.5, seed + 200);
        if (x.count_ones() == 0) continue;
        auto w = WeightedBinaryMatrix::unweighted(x);
        for (auto spec : {ObjectiveSpec::with_rho(Rational(1)), ObjectiveSpec::frobenius()}) {
            CgConfig cfg = exact_cfg(spec, 2);
            cfg.objective = spec;
            CgState state = run_cg(w, cfg);
            double full = full_pool_lp(x, 2, spec);
            // Ceiling stops may halt above the LP optimum but never below;
            // the bound must bracket the optimum from below.
            CHECK(state.final_lp_double >= full - 1e-6);
            CHECK(state.best_dual_bound.to_double() <= full + 1e-6);
            if (state.status == CgStatus::OptimalLp)
                CHECK(state.final_lp_double == doctest::Approx(full).epsilon(1e-6).scale(1.0));
        }
    }
}

TEST_CASE("CG pool never contains duplicate supports") {
    BinaryMatrix x = test::random_binary(5, 5, 0.5, 42);
    auto w = WeightedBinaryMatrix::unweighted(x);
    CgState state = run_cg(w, exact_cfg(ObjectiveSpec::with_rho(Rational(1)), 2));
    for (std::size_t i = 0; i < state.pool.size(); ++i)
        for (std::size_t j = i + 1; j < state.pool.size(); ++j)
            CHECK_FALSE(state.pool[i] == state.pool[j]);
}

TEST_CASE("CG invariants: primal nonincreasing, bound nondecreasing, bound <= primal") {
    BinaryMatrix x = test::random_binary(5, 4, 0.5, 321);
    auto w = WeightedBinaryMatrix::unweighted(x);
    CgState state = run_cg(w, exact_cfg(ObjectiveSpec::with_rho(Rational(1)), 2));
    for (std::size_t t = 1; t < state.log.size(); ++t) {
        CHECK(state.log[t].zeta_rmlp <= state.log[t - 1].zeta_rmlp + 1e-7);
        CHECK(state.log[t].dual_bound >= state.log[t - 1].dual_bound - 1e-9);
        CHECK(state.log[t].dual_bound <= state.log[t].zeta_rmlp + 1e-7);
    }
}

TEST_CASE("Prop 5 via CG: MLP(1/k) equals MLP_F when both priced exactly") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        BinaryMatrix x = test::random_binary(4, 4, 0.5, seed + 900);
        if (x.count_ones() == 0) continue;
        auto w = WeightedBinaryMatrix::unweighted(x);
        std::size_t k = 2;
        CgState frob = run_cg(w, exact_cfg(ObjectiveSpec::frobenius(), k));
        CgState rho = run_cg(w, exact_cfg(ObjectiveSpec::with_rho(Rational(1, 2)), k));
        // The 1/k objective is fractional, so rho-mode runs to LP optimality.
        REQUIRE(rho.status == CgStatus::OptimalLp);
        double full = full_pool_lp(x, k, ObjectiveSpec::frobenius());
        CHECK(rho.final_lp_double == doctest::Approx(full).epsilon(1e-6).scale(1.0));
        if (frob.status == CgStatus::OptimalLp)
            CHECK(frob.final_lp_double == doctest::Approx(full).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("integral stage selects an exact cover when one is in the pool") {
    BinaryMatrix x = test::intro_matrix();
    auto w = WeightedBinaryMatrix::unweighted(x);
    std::vector<Rank1Pattern> pool;
    Factorisation cover = test::intro_cover();
    for (std::size_t l = 0; l < 2; ++l) pool.push_back({cover.a_col(l), cover.b_row(l)});
    IntegralOutcome out =
        integral_stage(w, 2, pool, ObjectiveSpec::frobenius(), MilpBudget{});
    CHECK(out.zeta_f == Rational(0));
    CHECK(out.selected.size() == 2);
}

TEST_CASE("integral stage over the complete pool equals brute force") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        BinaryMatrix x = test::random_binary(3, 3, 0.5, seed + 77);
        if (x.count_ones() == 0) continue;
        auto w = WeightedBinaryMatrix::unweighted(x);
        ColumnPool pool = full_pool(3, 3);
        for (auto spec : {ObjectiveSpec::frobenius(), ObjectiveSpec::with_rho(Rational(1))}) {
            IntegralOutcome out =
                integral_stage(w, 2, pool.patterns(), spec, MilpBudget{});
            auto oracle = brute_force_kbmf(x, 2, spec);
            CHECK(out.objective == oracle.objective);
        }
    }
}

TEST_CASE("integral stage with an empty pool leaves every one unexplained") {
    BinaryMatrix x = test::intro_matrix();
    auto w = WeightedBinaryMatrix::unweighted(x);
    IntegralOutcome out = integral_stage(w, 2, {}, ObjectiveSpec::with_rho(Rational(1)),
                                         MilpBudget{});
    CHECK(out.zeta_f == Rational(7));
    CHECK(out.selected.empty());
}

TEST_CASE("certificates: zero-error proven; Example 1 shows a genuine gap") {
    BinaryMatrix x = test::intro_matrix();
    auto w = WeightedBinaryMatrix::unweighted(x);
    CgState cg = run_cg(w, exact_cfg(ObjectiveSpec::frobenius(), 2));
    IntegralOutcome out = integral_stage(w, 2, cg.pool, ObjectiveSpec::frobenius(), MilpBudget{});
    Certificate cert = certify_optimality(cg, out.objective);
    CHECK(out.zeta_f == Rational(0));
    CHECK(cert.proven);
    CHECK(cert.gap == Rational(0));

    BinaryMatrix j = test::j4_minus_i4();
    auto wj = WeightedBinaryMatrix::unweighted(j);
    CgState cgj = run_cg(wj, exact_cfg(ObjectiveSpec::frobenius(), 3));
    IntegralOutcome outj =
        integral_stage(wj, 3, cgj.pool, ObjectiveSpec::frobenius(), MilpBudget{});
    CHECK(outj.objective >= Rational(1));  // Boolean rank is 4
    Certificate certj = certify_optimality(cgj, outj.objective);
    CHECK_FALSE(certj.proven);
    CHECK(certj.gap >= Rational(1));
}

TEST_CASE("pipeline solves a clean synthetic instance with proof") {
    BinaryMatrix x = generate_synthetic(8, 8, 3, 50.0, 0.0, 5);
    REQUIRE(x.count_ones() > 0);
    PipelineConfig cfg;
    cfg.k = 3;
    cfg.objective = ObjectiveSpec::with_rho(Rational(1));
    cfg.seed = 11;
    cfg.kgreedy_seeds = 4;
    PipelineResult res = solve_cg_pipeline(x, cfg);
    CHECK(res.zeta_f == Rational(0));
    CHECK(res.proven);
}

TEST_CASE("pipeline never reports a worse Frobenius error than its warm start") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        BinaryMatrix x = test::random_binary(6, 6, 0.5, seed + 4000);
        if (x.count_ones() == 0) continue;
        PipelineConfig cfg;
        cfg.k = 2;
        cfg.objective = ObjectiveSpec::with_rho(Rational(1));
        cfg.seed = seed;
        cfg.kgreedy_seeds = 3;
        PipelineResult res = solve_cg_pipeline(x, cfg);
        Factorisation greedy = k_greedy(x, 2, k_greedy_seeds(seed, 3));
        CHECK(res.zeta_f <= frobenius_error(x, greedy));
    }
}
