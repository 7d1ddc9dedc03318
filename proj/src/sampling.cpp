#include "wedgebench/sampling.hpp"

namespace wb {

Ordinal random_height_near(Rng& rng, const Ordinal& anchor, int max_offset) {
    return anchor + Ordinal(rng.below(static_cast<std::uint64_t>(max_offset) + 1));
}

TNode random_t_node(const Trees& tr, Rng& rng, const Ordinal& height, int max_flips) {
    auto bd = block_decompose(height);
    std::vector<Ordinal> flips;
    if (!bd.limit_part.is_zero()) {
        std::uint64_t k = rng.below(static_cast<std::uint64_t>(max_flips) + 1);
        for (std::uint64_t i = 0; i < k; ++i) flips.push_back(random_below(rng, bd.limit_part));
    }
    std::vector<bool> tail;
    for (Natural i = 0; i < bd.finite_part; ++i) tail.push_back(rng.coin());
    return tr.t_node(height, std::move(flips), std::move(tail));
}

TeNode random_te_node(const Trees& tr, Rng& rng, const Ordinal& height, int max_entries) {
    if (height.is_zero()) return TeNode{};
    std::map<Ordinal, Natural> d;
    std::uint64_t k = rng.below(static_cast<std::uint64_t>(max_entries) + 1);
    for (std::uint64_t i = 0; i < k; ++i) {
        Ordinal a = random_below(rng, height);
        if (d.count(a)) continue;
        if (rng.coin()) {
            d[a] = 2 * (rng.below(40) + 100 * i);
        } else {
            // swap two stem values; injectivity is preserved
            Ordinal b = random_below(rng, height);
            if (b == a || d.count(b)) continue;
            d[a] = tr.system().eval(height, b);
            d[b] = tr.system().eval(height, a);
        }
    }
    return tr.te_node(height, d);
}

UNode random_u_node(const Trees& tr, Rng& rng, const Ordinal& height, unsigned bit_percent) {
    Ordinal g = gamma_of(height);
    UNode u;
    while (u.height < g) {
        if (rng.chance(40)) {
            u = tr.u_append(u, rng.chance(bit_percent) ? rng.below(2) : 2 + rng.below(8));
            continue;
        }
        // glue a tail ending at some limit in (height(u), g]
        Ordinal lam = g;
        if (rng.coin()) {
            Ordinal r = random_below(rng, g);
            if (u.height < r) lam = gamma_of(r) + Ordinal::omega();
        }
        TNode t = random_t_node(tr, rng, lam, 3);
        u = tr.u_glue(u, t);
    }
    while (u.height < height) u = tr.u_append(u, rng.chance(bit_percent) ? rng.below(2) : 2 + rng.below(8));
    return u;
}

} // namespace wb
