#include "kbmf/heuristics.hpp"

#include "kbmf/objective.hpp"
#include "kbmf/pricing.hpp"
#include "kbmf/rng.hpp"

#include <stdexcept>

namespace kbmf {

Eigen::MatrixXd signed_matrix(const BinaryMatrix& x) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(x.rows()),
                                              static_cast<Eigen::Index>(x.cols()));
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) {
            if (x.is_missing(i, j)) continue;
            h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                x.is_one(i, j) ? 1.0 : -1.0;
        }
    return h;
}

Eigen::MatrixXd signed_matrix(const WeightedBinaryMatrix& w) {
    Eigen::MatrixXd h = signed_matrix(w.core);
    for (std::size_t i = 0; i < w.core.rows(); ++i)
        for (std::size_t j = 0; j < w.core.cols(); ++j)
            h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *=
                static_cast<double>(w.row_weights[i] * w.col_weights[j]);
    return h;
}

std::vector<Rank1Pattern> k_greedy_extract(Eigen::MatrixXd h, std::size_t k, std::uint64_t seed) {
    std::vector<Rank1Pattern> patterns;
    for (std::size_t l = 0; l < k; ++l) {
        auto seeds = portfolio_seeds(seed, l);
        PricingOutcome best = portfolio(h, seeds);
        if (best.pattern.empty()) break;  // H has no positive rectangle left
        for (Eigen::Index i = 0; i < h.rows(); ++i) {
            if (!best.pattern.a.test(static_cast<std::size_t>(i))) continue;
            for (Eigen::Index j = 0; j < h.cols(); ++j)
                if (best.pattern.b.test(static_cast<std::size_t>(j))) h(i, j) = 0.0;
        }
        patterns.push_back(std::move(best.pattern));
    }
    return patterns;
}

namespace {

Factorisation patterns_to_full(const std::vector<Rank1Pattern>& ps, std::size_t n, std::size_t m,
                               std::size_t k) {
    Factorisation f(n, m, k);
    for (std::size_t l = 0; l < ps.size(); ++l) {
        f.a_col(l) = ps[l].a;
        f.b_row(l) = ps[l].b;
    }
    return f;
}

}  // namespace

Factorisation k_greedy(const BinaryMatrix& x, std::size_t k, std::span<const std::uint64_t> seeds,
                       bool preprocess_first) {
    if (k < 1) throw std::invalid_argument("k_greedy: k must be positive");
    if (seeds.empty()) throw std::invalid_argument("k_greedy: at least one seed required");

    WeightedBinaryMatrix reduced;
    bool have_reduced = false;
    if (preprocess_first) {
        try {
            reduced = reduce(x);
            have_reduced = true;
        } catch (const std::invalid_argument&) {
            have_reduced = false;  // all-zero/all-missing input, plain run still works
        }
    }

    Factorisation best(x.rows(), x.cols(), k);
    Rational best_err;
    bool have_best = false;
    auto consider = [&](Factorisation f) {
        Rational err = frobenius_error(x, f);
        if (!have_best || err < best_err) {
            best = std::move(f);
            best_err = std::move(err);
            have_best = true;
        }
    };

    for (auto seed : seeds) {
        consider(patterns_to_full(k_greedy_extract(signed_matrix(x), k, seed), x.rows(), x.cols(),
                                  k));
        if (have_reduced) {
            auto ps = k_greedy_extract(signed_matrix(reduced), k, seed);
            Factorisation fr =
                patterns_to_full(ps, reduced.core.rows(), reduced.core.cols(), k);
            consider(expand(reduced, fr));
        }
    }
    return best;
}

std::vector<std::uint64_t> k_greedy_seeds(std::uint64_t base, std::size_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::size_t i = 0; i < count; ++i) seeds[i] = CounterRng::mix(base ^ (0x6b67ULL + i));
    return seeds;
}

}  // namespace kbmf
