#include "kbmf/milp.hpp"

#include "kbmf/formulations.hpp"
#include "kbmf/oracle.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace kbmf;

TEST_CASE("compact IP covers the intro matrix exactly at k=2") {
    auto w = WeightedBinaryMatrix::unweighted(test::intro_matrix());
    CompactModel cip = build_compact(w, 2, /*relaxed=*/false);
    MilpModel m{cip.lp, cip.integer_vars, cip.branch_priority, std::nullopt};
    MilpResult res = solve_milp(m);
    REQUIRE(res.status == MilpStatus::Optimal);
    CHECK(res.incumbent_objective == doctest::Approx(0.0).epsilon(1e-7));
    Factorisation f = compact_factorisation(cip, res.incumbent);
    CHECK(frobenius_error(test::intro_matrix(), f) == Rational(0));
}

TEST_CASE("an LP-integral model is solved at the root") {
    LpModel lp;
    lp.add_var(Rational(0), Rational(1), Rational(-1));
    lp.add_var(Rational(0), Rational(1), Rational(-1));
    lp.add_row({{0, Rational(1)}, {1, Rational(1)}}, Relation::LessEqual, Rational(2));
    MilpModel m{lp, {0, 1}, {}, std::nullopt};
    MilpResult res = solve_milp(m);
    REQUIRE(res.status == MilpStatus::Optimal);
    CHECK(res.node_count == 1);
    CHECK(res.incumbent_objective == doctest::Approx(-2.0));
}

TEST_CASE("random tiny compact IPs match the brute-force oracle") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        BinaryMatrix x = test::random_binary(4, 4, 0.5, seed + 11);
        if (x.count_ones() == 0) continue;
        auto w = WeightedBinaryMatrix::unweighted(x);
        CompactModel cip = build_compact(w, 2, false);
        MilpModel m{cip.lp, cip.integer_vars, cip.branch_priority, std::nullopt};
        MilpResult res = solve_milp(m);
        REQUIRE(res.status == MilpStatus::Optimal);
        auto oracle = brute_force_kbmf(x, 2, ObjectiveSpec::frobenius());
        CHECK(Rational::from_double(res.incumbent_objective) == oracle.objective);
    }
}

TEST_CASE("warm start is never lost and traces are monotone") {
    BinaryMatrix x = test::j4_minus_i4();
    auto w = WeightedBinaryMatrix::unweighted(x);
    CompactModel cip = build_compact(w, 3, false);

    // Feasible (far from optimal) warm start: first rectangle only.
    std::vector<double> warm(cip.lp.vars.size(), 0.0);
    warm[cip.a_index(1, 0)] = 1.0;
    warm[cip.b_index(0, 0)] = 1.0;
    MilpModel m{cip.lp, cip.integer_vars, cip.branch_priority, warm};
    MilpResult res = solve_milp(m);
    REQUIRE(res.has_incumbent);

    // Warm-start objective: covering cell (1,0) only leaves 11 ones unmet.
    double warm_obj = 11.0;
    for (double v : res.incumbent_history) CHECK(v <= warm_obj + 1e-9);
    for (std::size_t i = 1; i < res.incumbent_history.size(); ++i)
        CHECK(res.incumbent_history[i] <= res.incumbent_history[i - 1] + 1e-12);
    for (std::size_t i = 1; i < res.bound_history.size(); ++i)
        CHECK(res.bound_history[i] >= res.bound_history[i - 1] - 1e-9);
    CHECK(res.dual_bound <= res.incumbent_objective + 1e-9);
}

TEST_CASE("infeasible root is reported") {
    LpModel lp;
    lp.add_var(Rational(0), Rational(1), Rational(1));
    lp.add_var(Rational(0), Rational(1), Rational(1));
    lp.add_row({{0, Rational(1)}, {1, Rational(1)}}, Relation::GreaterEqual, Rational(3));
    MilpModel m{lp, {0, 1}, {}, std::nullopt};
    CHECK(solve_milp(m).status == MilpStatus::Infeasible);
}

TEST_CASE("node budget zero returns the root bound with the warm incumbent") {
    // min -x - y + knapsack row forcing a fractional root.
    LpModel lp;
    lp.add_var(Rational(0), Rational(1), Rational(-2));
    lp.add_var(Rational(0), Rational(1), Rational(-3));
    lp.add_row({{0, Rational(2)}, {1, Rational(3)}}, Relation::LessEqual, Rational(4));
    MilpModel m{lp, {0, 1}, {}, std::vector<double>{1.0, 0.0}};
    MilpBudget budget;
    budget.nodes = 0;
    MilpResult res = solve_milp(m, budget);
    CHECK(res.status == MilpStatus::FeasibleLimit);
    REQUIRE(res.has_incumbent);
    CHECK(res.incumbent_objective == doctest::Approx(-2.0));  // the warm point
    // Root relaxation: x=1, y=2/3 -> -4.
    CHECK(res.dual_bound == doctest::Approx(-4.0));
}
