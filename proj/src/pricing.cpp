#include "kbmf/pricing.hpp"

#include "kbmf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kbmf {

namespace {

double pattern_value(const Eigen::MatrixXd& h, const Rank1Pattern& p) {
    double v = 0;
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        if (!p.a.test(static_cast<std::size_t>(i))) continue;
        for (Eigen::Index j = 0; j < h.cols(); ++j)
            if (p.b.test(static_cast<std::size_t>(j))) v += h(i, j);
    }
    return v;
}

Rank1Pattern transposed(const Rank1Pattern& p) { return {p.b, p.a}; }

PricingOutcome greedy_on(const Eigen::MatrixXd& h, GreedyOrdering ordering, std::uint64_t seed) {
    const auto n = static_cast<std::size_t>(h.rows());
    const auto m = static_cast<std::size_t>(h.cols());

    Eigen::VectorXd gamma_pos(static_cast<Eigen::Index>(n)), gamma_neg(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < h.rows(); ++i) {
        gamma_pos(i) = h.row(i).cwiseMax(0.0).sum();
        gamma_neg(i) = h.row(i).cwiseMin(0.0).sum();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    switch (ordering) {
        case GreedyOrdering::Original:
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                return gamma_pos(static_cast<Eigen::Index>(a)) >
                       gamma_pos(static_cast<Eigen::Index>(b));
            });
            break;
        case GreedyOrdering::Revised:
            // Ties on the positive mass are broken toward the row with less
            // negative mass.
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                double pa = gamma_pos(static_cast<Eigen::Index>(a));
                double pb = gamma_pos(static_cast<Eigen::Index>(b));
                if (pa != pb) return pa > pb;
                return gamma_neg(static_cast<Eigen::Index>(a)) >
                       gamma_neg(static_cast<Eigen::Index>(b));
            });
            break;
        case GreedyOrdering::OriginalPerturbed:
        case GreedyOrdering::RevisedPerturbed: {
            CounterRng rng(seed, 0x70657274ULL);
            Eigen::VectorXd key = gamma_pos;
            for (Eigen::Index i = 0; i < key.size(); ++i)
                key(i) *= 1.0 + (rng.next_double() * 2.0 - 1.0) * 1e-3;
            bool revised = ordering == GreedyOrdering::RevisedPerturbed;
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                double ka = key(static_cast<Eigen::Index>(a));
                double kb = key(static_cast<Eigen::Index>(b));
                if (ka != kb) return ka > kb;
                if (revised)
                    return gamma_neg(static_cast<Eigen::Index>(a)) >
                           gamma_neg(static_cast<Eigen::Index>(b));
                return false;
            });
            break;
        }
        case GreedyOrdering::Random: {
            CounterRng rng(seed, 0x72616e64ULL);
            for (std::size_t i = n; i > 1; --i)
                std::swap(order[i - 1], order[rng.next_below(i)]);
            break;
        }
    }

    // Phase I: accept a row when it raises the clipped column mass.
    Rank1Pattern p{BitVec(n), BitVec(m)};
    Eigen::VectorXd s = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    double f0 = 0.0;
    for (std::size_t i : order) {
        double f1 = (s + h.row(static_cast<Eigen::Index>(i)).transpose()).cwiseMax(0.0).sum();
        if (f0 < f1) {
            p.a.set(i);
            s += h.row(static_cast<Eigen::Index>(i)).transpose();
            f0 = f1;
        }
    }
    // Phase II: optimal column response.
    double value = 0.0;
    for (std::size_t j = 0; j < m; ++j)
        if (s(static_cast<Eigen::Index>(j)) > 0) {
            p.b.set(j);
            value += s(static_cast<Eigen::Index>(j));
        }
    if (p.a.none() || p.b.none()) return {Rank1Pattern{BitVec(n), BitVec(m)}, 0.0, std::nullopt};
    return {std::move(p), value, std::nullopt};
}

}  // namespace

PricingOutcome greedy_bbqp(const Eigen::MatrixXd& h, GreedyOrdering ordering, bool transpose,
                           std::uint64_t seed) {
    if (!transpose) return greedy_on(h, ordering, seed);
    Eigen::MatrixXd ht = h.transpose();
    PricingOutcome out = greedy_on(ht, ordering, seed);
    out.pattern = transposed(out.pattern);
    return out;
}

PricingOutcome alternate(const Eigen::MatrixXd& h, const Rank1Pattern& start) {
    const auto n = static_cast<std::size_t>(h.rows());
    const auto m = static_cast<std::size_t>(h.cols());
    BitVec a = start.a.size() == n ? start.a : BitVec(n);
    BitVec b = start.b.size() == m ? start.b : BitVec(m);

    for (int iter = 0; iter < 1000; ++iter) {
        // a := best response to b.
        BitVec a_new(n);
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0;
            for (std::size_t j = 0; j < m; ++j)
                if (b.test(j)) dot += h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (dot > 0) a_new.set(i);
        }
        if (a_new == a) break;
        a = a_new;
        // b := best response to a.
        BitVec b_new(m);
        for (std::size_t j = 0; j < m; ++j) {
            double dot = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (a.test(i)) dot += h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            if (dot > 0) b_new.set(j);
        }
        if (b_new == b) break;
        b = b_new;
    }
    Rank1Pattern p{std::move(a), std::move(b)};
    if (p.a.none() || p.b.none()) return {Rank1Pattern{BitVec(n), BitVec(m)}, 0.0, std::nullopt};
    double v = pattern_value(h, p);
    return {std::move(p), v, std::nullopt};
}

std::vector<std::uint64_t> portfolio_seeds(std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng(seed, CounterRng::mix(0x706f7274ULL ^ stream));
    std::vector<std::uint64_t> seeds(22);
    for (auto& s : seeds) s = rng.next_u64();
    return seeds;
}

std::vector<PricingOutcome> portfolio_members(const Eigen::MatrixXd& h,
                                              std::span<const std::uint64_t> seeds) {
    // Phase I runs on the smaller dimension unless the transpose is forced.
    const bool base_transpose = h.rows() > h.cols();
    const std::uint64_t perturb_seed = seeds.empty() ? 0 : seeds.front();

    std::vector<PricingOutcome> members;
    members.reserve(8 + seeds.size());
    const GreedyOrdering fixed[] = {GreedyOrdering::Original, GreedyOrdering::Revised,
                                    GreedyOrdering::OriginalPerturbed,
                                    GreedyOrdering::RevisedPerturbed};
    for (auto ordering : fixed)
        for (bool flip : {false, true})
            members.push_back(greedy_bbqp(h, ordering, base_transpose != flip, perturb_seed));
    for (auto s : seeds)
        members.push_back(greedy_bbqp(h, GreedyOrdering::Random, base_transpose, s));

    for (auto& member : members) {
        if (member.pattern.empty()) continue;
        PricingOutcome polished = alternate(h, member.pattern);
        if (polished.value > member.value) member = std::move(polished);
    }
    return members;
}

PricingOutcome portfolio(const Eigen::MatrixXd& h, std::span<const std::uint64_t> seeds) {
    auto members = portfolio_members(h, seeds);
    PricingOutcome best{Rank1Pattern{BitVec(static_cast<std::size_t>(h.rows())),
                                     BitVec(static_cast<std::size_t>(h.cols()))},
                        0.0, std::nullopt};
    for (auto& member : members)
        if (member.value > best.value) best = std::move(member);
    return best;
}

PricingOutcome exact_bbqp(const Eigen::MatrixXd& h, const MilpBudget& budget,
                          const PricingOutcome& warm) {
    PricingIpModel ip = build_pricing_ip(h, warm.pattern.empty() ? nullptr : &warm.pattern);
    MilpModel milp{std::move(ip.lp), std::move(ip.integer_vars), {}, std::move(ip.warm)};
    MilpResult res = solve_milp(milp, budget);

    PricingOutcome out;
    out.pattern = Rank1Pattern{BitVec(ip.n), BitVec(ip.m)};
    if (res.has_incumbent) {
        for (std::size_t i = 0; i < ip.n; ++i)
            if (res.incumbent[ip.a_index(i)] > 0.5) out.pattern.a.set(i);
        for (std::size_t j = 0; j < ip.m; ++j)
            if (res.incumbent[ip.b_index(j)] > 0.5) out.pattern.b.set(j);
        if (out.pattern.empty()) out.pattern = Rank1Pattern{BitVec(ip.n), BitVec(ip.m)};
        out.value = out.pattern.empty() ? 0.0 : pattern_value(h, out.pattern);
    } else if (!warm.pattern.empty()) {
        out.pattern = warm.pattern;
        out.value = warm.value;
    }
    // Maximisation bound is the negated minimisation bound; never below the
    // incumbent value.
    out.exact_bound = std::max(-res.dual_bound, out.value);
    return out;
}

}  // namespace kbmf
