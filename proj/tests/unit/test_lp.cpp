#include "kbmf/lp.hpp"

#include "kbmf/rng.hpp"
#include "support/naive_simplex.hpp"

#include <doctest.h>

using namespace kbmf;

namespace {

// Random bounded-feasible LP: box variables, rows anchored at an interior
// point so feasibility is guaranteed.
struct RandomLp {
    LpModel boxed;    // variable upper bounds in the bounds
    LpModel rowform;  // the same bounds written as rows (for the naive oracle)
};

RandomLp random_lp(std::uint64_t seed) {
    CounterRng rng(seed, 0x6c70ULL);
    const int n = 3 + static_cast<int>(rng.next_below(5));
    const int m = 2 + static_cast<int>(rng.next_below(4));
    RandomLp out;
    std::vector<double> upper(n), anchor(n);
    for (int j = 0; j < n; ++j) {
        upper[j] = 1.0 + static_cast<double>(rng.next_below(8));
        anchor[j] = upper[j] * rng.next_double();
        Rational c(static_cast<long long>(rng.next_below(21)) - 10, 2);
        out.boxed.add_var(Rational(0), Rational::from_double(upper[j]), c);
        out.rowform.add_var(Rational(0), std::nullopt, c);
    }
    for (int i = 0; i < m; ++i) {
        std::vector<LpTerm> terms;
        double activity = 0.0;
        for (int j = 0; j < n; ++j) {
            if (rng.bernoulli(0.5)) continue;
            Rational coeff(static_cast<long long>(rng.next_below(11)) - 5, 1);
            if (coeff.is_zero()) continue;
            terms.push_back({j, coeff});
            activity += coeff.to_double() * anchor[j];
        }
        if (terms.empty()) continue;
        double margin = rng.next_double() * 3.0;
        Relation rel = rng.next_below(4) == 0 ? Relation::Equal
                       : rng.bernoulli(0.5)  ? Relation::LessEqual
                                             : Relation::GreaterEqual;
        double rhs = activity;
        if (rel == Relation::LessEqual) rhs += margin;
        if (rel == Relation::GreaterEqual) rhs -= margin;
        Rational r = Rational::from_double(rhs);
        out.boxed.add_row(terms, rel, r);
        out.rowform.add_row(terms, rel, r);
    }
    for (int j = 0; j < n; ++j)
        out.rowform.add_row({{j, Rational(1)}}, Relation::LessEqual,
                            Rational::from_double(upper[j]));
    return out;
}

}  // namespace

TEST_CASE("min x subject to x >= 3 in [0,10]") {
    LpModel m;
    m.add_var(Rational(0), Rational(10), Rational(1));
    m.add_row({{0, Rational(1)}}, Relation::GreaterEqual, Rational(3));
    LpSolution sol = solve_lp(m);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(3.0));
    CHECK(sol.primal[0] == doctest::Approx(3.0));
    // Binding >= row carries dual 1 (reduced cost convention c - A^T y).
    CHECK(sol.duals[0] == doctest::Approx(1.0));
}

TEST_CASE("infeasible and unbounded detection") {
    LpModel bad;
    bad.add_var(Rational(0), Rational(2), Rational(1));
    bad.add_row({{0, Rational(1)}}, Relation::GreaterEqual, Rational(3));
    CHECK(solve_lp(bad).status == LpStatus::Infeasible);

    LpModel ray;
    ray.add_var(Rational(0), std::nullopt, Rational(-1));
    ray.add_row({{0, Rational(1)}}, Relation::GreaterEqual, Rational(0));
    CHECK(solve_lp(ray).status == LpStatus::Unbounded);
}

TEST_CASE("equality rows and free-ish structure") {
    // min x + y  s.t.  x + y = 2, x - y <= 0, boxes [0,5]
    LpModel m;
    m.add_var(Rational(0), Rational(5), Rational(1));
    m.add_var(Rational(0), Rational(5), Rational(1));
    m.add_row({{0, Rational(1)}, {1, Rational(1)}}, Relation::Equal, Rational(2));
    m.add_row({{0, Rational(1)}, {1, Rational(-1)}}, Relation::LessEqual, Rational(0));
    LpSolution sol = solve_lp(m);
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.objective == doctest::Approx(2.0));
}

TEST_CASE("random LPs agree with the naive Big-M tableau oracle") {
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        RandomLp lp = random_lp(seed);
        LpSolution mine = solve_lp(lp.boxed);
        test::NaiveResult ref = test::naive_simplex(lp.rowform);
        REQUIRE(mine.status == LpStatus::Optimal);
        REQUIRE(ref.status == test::NaiveStatus::Optimal);
        CHECK(mine.objective == doctest::Approx(ref.objective).epsilon(1e-9).scale(1.0));
        ++solved;
    }
    CHECK(solved == 60);
}

TEST_CASE("weak duality holds, including at the iteration limit") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        RandomLp lp = random_lp(seed);
        LpSolution sol = solve_lp(lp.boxed);
        CHECK(sol.dual_objective <= sol.objective + 1e-6);

        LpParams tight;
        tight.iteration_limit = 1;
        LpSolution cut = solve_lp(lp.boxed, tight);
        CHECK(cut.dual_objective <= cut.objective + 1e-6);
    }
}

TEST_CASE("deterministic pivot sequence") {
    RandomLp lp = random_lp(5);
    LpSolution a = solve_lp(lp.boxed);
    LpSolution b = solve_lp(lp.boxed);
    CHECK(a.iterations == b.iterations);
    CHECK(a.objective == b.objective);
    CHECK(a.basis_head == b.basis_head);
}

TEST_CASE("exact recheck certifies the optimal basis") {
    for (std::uint64_t seed = 200; seed < 220; ++seed) {
        RandomLp lp = random_lp(seed);
        LpSolution sol = solve_lp(lp.boxed);
        REQUIRE(sol.status == LpStatus::Optimal);
        ExactLpAudit audit = exact_recheck(lp.boxed, sol);
        REQUIRE(audit.basis_ok);
        CHECK(audit.primal_feasible);
        CHECK(audit.dual_feasible);
        CHECK(audit.objective.to_double() == doctest::Approx(sol.objective).epsilon(1e-9));
    }
}

TEST_CASE("exact recheck is exact on 1/3 data") {
    // min x  s.t.  3x >= 1  --> x = 1/3, not a representable double.
    LpModel m;
    m.add_var(Rational(0), Rational(1), Rational(1));
    m.add_row({{0, Rational(3)}}, Relation::GreaterEqual, Rational(1));
    LpSolution sol = solve_lp(m);
    REQUIRE(sol.status == LpStatus::Optimal);
    ExactLpAudit audit = exact_recheck(m, sol);
    REQUIRE(audit.basis_ok);
    CHECK(audit.objective == Rational(1, 3));
    CHECK(audit.primal[0] == Rational(1, 3));
}
