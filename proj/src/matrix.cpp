#include "kbmf/matrix.hpp"

#include <stdexcept>

namespace kbmf {

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("BinaryMatrix: empty shape");
    ones_.assign(rows, BitVec(cols));
    missing_.assign(rows, BitVec(cols));
}

void BinaryMatrix::set(std::size_t i, std::size_t j, Cell v) {
    switch (v) {
        case Cell::Zero:
            ones_[i].reset(j);
            missing_[i].reset(j);
            break;
        case Cell::One:
            ones_[i].set(j);
            missing_[i].reset(j);
            break;
        case Cell::Missing:
            ones_[i].reset(j);
            missing_[i].set(j);
            break;
    }
}

std::size_t BinaryMatrix::count_ones() const {
    std::size_t c = 0;
    for (const auto& r : ones_) c += r.count();
    return c;
}

std::size_t BinaryMatrix::count_missing() const {
    std::size_t c = 0;
    for (const auto& r : missing_) c += r.count();
    return c;
}

BinaryMatrix BinaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    if (rows.empty() || rows.front().empty())
        throw std::invalid_argument("BinaryMatrix::from_rows: empty input");
    BinaryMatrix x(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != x.cols())
            throw std::invalid_argument("BinaryMatrix::from_rows: ragged rows");
        for (std::size_t j = 0; j < x.cols(); ++j) {
            int v = rows[i][j];
            x.set(i, j, v < 0 ? Cell::Missing : (v ? Cell::One : Cell::Zero));
        }
    }
    return x;
}

Factorisation::Factorisation(std::size_t n, std::size_t m, std::size_t k) : n_(n), m_(m), k_(k) {
    if (k == 0) throw std::invalid_argument("Factorisation: k must be positive");
    a_cols_.assign(k, BitVec(n));
    b_rows_.assign(k, BitVec(m));
}

std::size_t Factorisation::cover_count(std::size_t i, std::size_t j) const {
    std::size_t c = 0;
    for (std::size_t l = 0; l < k_; ++l)
        if (a_cols_[l].test(i) && b_rows_[l].test(j)) ++c;
    return c;
}

BinaryMatrix boolean_product(const Factorisation& f) {
    BinaryMatrix z(f.n(), f.m());
    for (std::size_t l = 0; l < f.k(); ++l) {
        const BitVec& a = f.a_col(l);
        const BitVec& b = f.b_row(l);
        if (a.none() || b.none()) continue;
        for (std::size_t i = 0; i < f.n(); ++i)
            if (a.test(i)) {
                for (std::size_t j = 0; j < f.m(); ++j)
                    if (b.test(j)) z.set(i, j, Cell::One);
            }
    }
    return z;
}

Factorisation patterns_to_factorisation(const std::vector<Rank1Pattern>& pool,
                                        const std::vector<std::size_t>& selected, std::size_t n,
                                        std::size_t m, std::size_t k) {
    if (selected.size() > k)
        throw std::invalid_argument("patterns_to_factorisation: more than k patterns selected");
    Factorisation f(n, m, k);
    for (std::size_t s = 0; s < selected.size(); ++s) {
        if (selected[s] >= pool.size())
            throw std::out_of_range("patterns_to_factorisation: selection outside pool");
        f.a_col(s) = pool[selected[s]].a;
        f.b_row(s) = pool[selected[s]].b;
    }
    return f;
}

std::size_t covers_count(const std::vector<Rank1Pattern>& pool,
                         const std::vector<std::size_t>& selected, std::size_t i, std::size_t j) {
    std::size_t c = 0;
    for (auto s : selected)
        if (pool.at(s).covers(i, j)) ++c;
    return c;
}

}  // namespace kbmf
