#include "wedgebench/random.hpp"

#include <algorithm>

namespace wb {

namespace {

std::vector<Ordinal::Term> make_terms(std::vector<Ordinal> exps, Rng& rng, std::uint64_t max_coeff) {
    std::sort(exps.begin(), exps.end(), std::greater<>());
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    std::vector<Ordinal::Term> terms;
    for (auto& e : exps) terms.push_back({e, Natural(1 + rng.below(max_coeff))});
    return terms;
}

// random ordinal < w^e
Ordinal below_power(Rng& rng, const Ordinal& e) {
    if (e.is_zero() || rng.chance(25)) return Ordinal();
    std::vector<Ordinal> exps;
    std::uint64_t k = 1 + rng.below(3);
    for (std::uint64_t i = 0; i < k; ++i) exps.push_back(random_below(rng, e));
    return Ordinal::from_terms(make_terms(std::move(exps), rng, 6));
}

} // namespace

Ordinal random_ordinal(Rng& rng, int depth, int max_terms, std::uint64_t max_coeff) {
    if (depth <= 0 || rng.chance(15)) return Ordinal(rng.below(max_coeff * 4));
    std::vector<Ordinal> exps;
    std::uint64_t k = 1 + rng.below(static_cast<std::uint64_t>(max_terms));
    for (std::uint64_t i = 0; i < k; ++i) exps.push_back(random_ordinal(rng, depth - 1, max_terms, max_coeff));
    return Ordinal::from_terms(make_terms(std::move(exps), rng, max_coeff));
}

Ordinal random_below(Rng& rng, const Ordinal& alpha) {
    if (alpha.is_zero()) throw DomainError("random_below: nothing below 0");
    const auto& t = alpha.terms();
    std::size_t i = rng.below(t.size());
    std::vector<Ordinal::Term> head(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(i));
    Ordinal r = Ordinal::from_terms(std::move(head));
    std::uint64_t c = to_u64(t[i].coeff, "coefficient");
    std::uint64_t keep = rng.below(std::min<std::uint64_t>(c, 1000));
    if (keep > 0) r = r + Ordinal::omega_power(t[i].exponent, keep);
    return r + below_power(rng, t[i].exponent);
}

} // namespace wb
