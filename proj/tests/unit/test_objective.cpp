#include "kbmf/objective.hpp"

#include "kbmf/data_io.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

using namespace kbmf;

TEST_CASE("frobenius error is zero on identical matrices") {
    BinaryMatrix x = test::intro_matrix();
    CHECK(frobenius_error(x, x) == Rational(0));
}

TEST_CASE("tight-instance core: flipping the middle zero costs exactly one") {
    WeightedBinaryMatrix w = build_tight_instance(2);
    BinaryMatrix z = BinaryMatrix::from_rows({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}});
    // Middle entry has weight 1*1; everything else matches.
    CHECK(frobenius_error(w.core, z, w.row_weights, w.col_weights) == Rational(1));
}

TEST_CASE("frobenius error equals the known-cell hamming distance") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        BinaryMatrix x = test::random_binary(6, 5, 0.5, seed);
        BinaryMatrix z = test::random_binary(6, 5, 0.5, seed + 1000);
        if (seed % 3 == 0) x.set(seed % 6, seed % 5, Cell::Missing);
        Rational direct = 0;
        for (std::size_t i = 0; i < 6; ++i)
            for (std::size_t j = 0; j < 5; ++j) {
                if (x.is_missing(i, j)) continue;
                if (x.is_one(i, j) != z.is_one(i, j)) direct += 1;
            }
        CHECK(frobenius_error(x, z) == direct);
    }
}

TEST_CASE("frobenius error rejects shape mismatch and missing Z") {
    BinaryMatrix x(2, 2), z(2, 3);
    CHECK_THROWS_AS(frobenius_error(x, z), std::invalid_argument);
    BinaryMatrix zm(2, 2);
    zm.set(0, 0, Cell::Missing);
    CHECK_THROWS_AS(frobenius_error(x, zm), std::invalid_argument);
}

TEST_CASE("rho objective on the tight rank-2 cover is 2") {
    WeightedBinaryMatrix w = build_tight_instance(2);
    // The two overlapping rectangles covering the middle zero twice.
    Factorisation f(3, 3, 2);
    f.a_col(0).set(0);
    f.a_col(0).set(1);
    f.b_row(0).set(0);
    f.b_row(0).set(1);
    f.a_col(1).set(1);
    f.a_col(1).set(2);
    f.b_row(1).set(1);
    f.b_row(1).set(2);
    CHECK(rho_error(w.core, f, Rational(1), w.row_weights, w.col_weights) == Rational(2));
    CHECK(frobenius_error(w.core, f, w.row_weights, w.col_weights) == Rational(1));
}

TEST_CASE("exact disjoint cover has zero error under both objectives") {
    BinaryMatrix x = BinaryMatrix::from_rows({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}});
    Factorisation f(3, 4, 2);
    f.a_col(0).set(0);
    f.a_col(0).set(1);
    f.b_row(0).set(0);
    f.b_row(0).set(1);
    f.a_col(1).set(2);
    f.b_row(1).set(2);
    f.b_row(1).set(3);
    CHECK(frobenius_error(x, f) == Rational(0));
    CHECK(rho_error(x, f, Rational(1)) == Rational(0));
}

TEST_CASE("sandwich: zetaF <= zeta(1) <= k*zetaF and the 1/k mirror") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        BinaryMatrix x = test::random_binary(7, 6, 0.45, seed);
        std::size_t k = 2 + seed % 3;
        Factorisation f = test::random_factorisation(7, 6, k, 0.35, seed + 77);
        Rational zf = frobenius_error(x, f);
        Rational z1 = rho_error(x, f, Rational(1));
        Rational zk = rho_error(x, f, Rational(1, static_cast<long long>(k)));
        CHECK(zf <= z1);
        CHECK(z1 <= Rational(static_cast<long long>(k)) * zf);
        CHECK(Rational(1, static_cast<long long>(k)) * zf <= zk);
        CHECK(zk <= zf);
    }
}

TEST_CASE("zeta(rho) is monotone in rho") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        BinaryMatrix x = test::random_binary(6, 6, 0.5, seed);
        Factorisation f = test::random_factorisation(6, 6, 3, 0.4, seed + 5);
        Rational lo = rho_error(x, f, Rational(1, 4));
        Rational mid = rho_error(x, f, Rational(1, 2));
        Rational hi = rho_error(x, f, Rational(2));
        CHECK(lo <= mid);
        CHECK(mid <= hi);
    }
}

TEST_CASE("reconstruction percentage") {
    BinaryMatrix x = test::intro_matrix();
    Factorisation f = test::intro_cover();
    CHECK(reconstruction_percentage(x, f) == Rational(100));

    // |E| = 7; a factorisation differing in d cells scores 100 (1 - d/7).
    Factorisation g = f;
    g.b_row(1).reset(2);  // drops two ones (cells (1,2),(2,2)): d = 2
    CHECK(reconstruction_percentage(x, g) == Rational(100) * (Rational(1) - Rational(2, 7)));

    BinaryMatrix zeros(2, 2);
    Factorisation any(2, 2, 1);
    CHECK_THROWS_AS(reconstruction_percentage(zeros, any), std::invalid_argument);
}

TEST_CASE("reconstruction percentage matches direct evaluation on random instances") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        BinaryMatrix x = test::random_binary(6, 7, 0.5, seed + 3);
        if (x.count_ones() == 0) continue;
        Factorisation f = test::random_factorisation(6, 7, 2, 0.4, seed);
        Rational err = frobenius_error(x, f);
        Rational expected =
            Rational(100) *
            (Rational(1) - err / Rational(static_cast<long long>(x.count_ones())));
        CHECK(reconstruction_percentage(x, f) == expected);
    }
}
