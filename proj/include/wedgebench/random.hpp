#pragma once

#include <cstdint>
#include <random>

#include "wedgebench/ordinal.hpp"

namespace wb {

// mt19937_64 is specified bit-for-bit by the standard; the distributions are
// not, so draws go through below() to keep runs portable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}
    std::uint64_t next() { return g_(); }
    // uniform-ish in [0, n); n > 0
    std::uint64_t below(std::uint64_t n) { return g_() % n; }
    bool coin() { return (g_() >> 63) != 0; }
    bool chance(unsigned percent) { return below(100) < percent; }

private:
    std::mt19937_64 g_;
};

// Random canonical ordinal below w^(w^depth); max_terms bounds each term list.
Ordinal random_ordinal(Rng& rng, int depth, int max_terms = 3, std::uint64_t max_coeff = 6);

// Uniform-ish point below alpha, built by descending the term list.
Ordinal random_below(Rng& rng, const Ordinal& alpha);

} // namespace wb
