#pragma once

#include "kbmf/matrix.hpp"
#include "kbmf/rng.hpp"

#include <vector>

namespace kbmf::test {

// The 3x3 patient/symptom matrix with an exact rank-2 cover.
inline BinaryMatrix intro_matrix() {
    return BinaryMatrix::from_rows({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}});
}

inline Factorisation intro_cover() {
    Factorisation f(3, 3, 2);
    f.a_col(0).set(0);
    f.a_col(0).set(1);
    f.a_col(1).set(1);
    f.a_col(1).set(2);
    f.b_row(0).set(0);
    f.b_row(0).set(1);
    f.b_row(1).set(1);
    f.b_row(1).set(2);
    return f;
}

// J4 - I4: Boolean rank 4, isolation number 3.
inline BinaryMatrix j4_minus_i4() {
    std::vector<std::vector<int>> rows(4, std::vector<int>(4, 1));
    for (int i = 0; i < 4; ++i) rows[i][i] = 0;
    return BinaryMatrix::from_rows(rows);
}

// The six half-weight rectangles certifying a zero master LP at k = 3.
inline std::vector<Rank1Pattern> j4_certificate() {
    auto pattern = [](std::initializer_list<int> rows, std::initializer_list<int> cols) {
        Rank1Pattern p{BitVec(4), BitVec(4)};
        for (int r : rows) p.a.set(static_cast<std::size_t>(r));
        for (int c : cols) p.b.set(static_cast<std::size_t>(c));
        return p;
    };
    return {pattern({1, 3}, {0, 2}), pattern({0, 3}, {1, 2}), pattern({0, 2}, {1, 3}),
            pattern({1, 2}, {0, 3}), pattern({0, 1}, {2, 3}), pattern({2, 3}, {0, 1})};
}

// Uniform random binary matrix with the given one-density.
inline BinaryMatrix random_binary(std::size_t n, std::size_t m, double density,
                                  std::uint64_t seed) {
    CounterRng rng(seed, 0x7465737453ULL);
    BinaryMatrix x(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (rng.bernoulli(density)) x.set(i, j, Cell::One);
    return x;
}

// Random factorisation with the given activation probability per bit.
inline Factorisation random_factorisation(std::size_t n, std::size_t m, std::size_t k, double p,
                                          std::uint64_t seed) {
    CounterRng rng(seed, 0x66616374ULL);
    Factorisation f(n, m, k);
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t i = 0; i < n; ++i)
            if (rng.bernoulli(p)) f.a_col(l).set(i);
        for (std::size_t j = 0; j < m; ++j)
            if (rng.bernoulli(p)) f.b_row(l).set(j);
    }
    return f;
}

}  // namespace kbmf::test
