#pragma once

#include "kbmf/matrix.hpp"
#include "kbmf/preprocess.hpp"
#include "kbmf/rational.hpp"

#include <span>

namespace kbmf {

enum class ObjectiveMode { Frobenius, Rho };

struct ObjectiveSpec {
    ObjectiveMode mode = ObjectiveMode::Frobenius;
    Rational rho = 1;  // used iff mode == Rho, must be > 0

    static ObjectiveSpec frobenius() { return {ObjectiveMode::Frobenius, 1}; }
    static ObjectiveSpec with_rho(Rational r);
};

// Squared-Frobenius error of Z against X over known cells, optionally with
// per-row/column multiplicity weights (cell weight r_i * c_j).  Z must be
// fully known.
Rational frobenius_error(const BinaryMatrix& x, const BinaryMatrix& z,
                         std::span<const std::int64_t> row_weights = {},
                         std::span<const std::int64_t> col_weights = {});

Rational frobenius_error(const BinaryMatrix& x, const Factorisation& f,
                         std::span<const std::int64_t> row_weights = {},
                         std::span<const std::int64_t> col_weights = {});

// Cover-charging objective: unexplained ones cost their weight, each covered
// zero costs rho * weight per covering factor.
Rational rho_error(const BinaryMatrix& x, const Factorisation& f, const Rational& rho,
                   std::span<const std::int64_t> row_weights = {},
                   std::span<const std::int64_t> col_weights = {});

Rational objective_value(const BinaryMatrix& x, const Factorisation& f, const ObjectiveSpec& spec,
                         std::span<const std::int64_t> row_weights = {},
                         std::span<const std::int64_t> col_weights = {});

// 100 * (1 - ||X - A o B||_F^2 / ||X||_F^2); X must be fully known and
// nonzero.
Rational reconstruction_percentage(const BinaryMatrix& x_full, const Factorisation& f);

}  // namespace kbmf
