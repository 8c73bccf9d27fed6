#include "kbmf/objective.hpp"

#include <stdexcept>

namespace kbmf {

namespace {

std::int64_t weight_at(std::span<const std::int64_t> w, std::size_t i) {
    return w.empty() ? 1 : w[i];
}

void check_weight_shape(const BinaryMatrix& x, std::span<const std::int64_t> rw,
                        std::span<const std::int64_t> cw) {
    if (!rw.empty() && rw.size() != x.rows())
        throw std::invalid_argument("objective: row weight length mismatch");
    if (!cw.empty() && cw.size() != x.cols())
        throw std::invalid_argument("objective: col weight length mismatch");
}

}  // namespace

ObjectiveSpec ObjectiveSpec::with_rho(Rational r) {
    if (r.sign() <= 0) throw std::invalid_argument("ObjectiveSpec: rho must be positive");
    return {ObjectiveMode::Rho, std::move(r)};
}

Rational frobenius_error(const BinaryMatrix& x, const BinaryMatrix& z,
                         std::span<const std::int64_t> row_weights,
                         std::span<const std::int64_t> col_weights) {
    if (x.rows() != z.rows() || x.cols() != z.cols())
        throw std::invalid_argument("frobenius_error: shape mismatch");
    if (z.has_missing()) throw std::invalid_argument("frobenius_error: Z must be fully known");
    check_weight_shape(x, row_weights, col_weights);
    BigInt total = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        std::int64_t ri = weight_at(row_weights, i);
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x.is_missing(i, j)) continue;
            bool xe = x.is_one(i, j), ze = z.is_one(i, j);
            if (xe != ze) total += ri * weight_at(col_weights, j);
        }
    }
    return Rational(total);
}

Rational frobenius_error(const BinaryMatrix& x, const Factorisation& f,
                         std::span<const std::int64_t> row_weights,
                         std::span<const std::int64_t> col_weights) {
    return frobenius_error(x, boolean_product(f), row_weights, col_weights);
}

Rational rho_error(const BinaryMatrix& x, const Factorisation& f, const Rational& rho,
                   std::span<const std::int64_t> row_weights,
                   std::span<const std::int64_t> col_weights) {
    if (x.rows() != f.n() || x.cols() != f.m())
        throw std::invalid_argument("rho_error: shape mismatch");
    if (rho.sign() <= 0) throw std::invalid_argument("rho_error: rho must be positive");
    check_weight_shape(x, row_weights, col_weights);
    BigInt uncovered_ones = 0;
    BigInt zero_covers = 0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        std::int64_t ri = weight_at(row_weights, i);
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x.is_missing(i, j)) continue;
            std::int64_t w = ri * weight_at(col_weights, j);
            std::size_t covers = f.cover_count(i, j);
            if (x.is_one(i, j)) {
                if (covers == 0) uncovered_ones += w;
            } else {
                zero_covers += w * static_cast<std::int64_t>(covers);
            }
        }
    }
    return Rational(uncovered_ones) + rho * Rational(zero_covers);
}

Rational objective_value(const BinaryMatrix& x, const Factorisation& f, const ObjectiveSpec& spec,
                         std::span<const std::int64_t> row_weights,
                         std::span<const std::int64_t> col_weights) {
    if (spec.mode == ObjectiveMode::Frobenius)
        return frobenius_error(x, f, row_weights, col_weights);
    return rho_error(x, f, spec.rho, row_weights, col_weights);
}

Rational reconstruction_percentage(const BinaryMatrix& x_full, const Factorisation& f) {
    if (x_full.has_missing())
        throw std::invalid_argument("reconstruction_percentage: X must be fully known");
    std::size_t norm = x_full.count_ones();
    if (norm == 0)
        throw std::invalid_argument("reconstruction_percentage: all-zero X, norm is zero");
    Rational err = frobenius_error(x_full, f);
    return Rational(100) * (Rational(1) - err / Rational(static_cast<long long>(norm)));
}

}  // namespace kbmf
