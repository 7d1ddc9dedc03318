#pragma once

#include "wedgebench/aronszajn.hpp"
#include "wedgebench/random.hpp"

namespace wb {

// Random members of each family at a given height. The generators only use
// the public constructors, so every result has passed the family's checks.
TNode random_t_node(const Trees& tr, Rng& rng, const Ordinal& height, int max_flips = 4);
TeNode random_te_node(const Trees& tr, Rng& rng, const Ordinal& height, int max_entries = 3);
// A U node of the given height assembled from random digits and glued tails.
UNode random_u_node(const Trees& tr, Rng& rng, const Ordinal& height, unsigned bit_percent = 50);

// Random height near the anchor: the anchor itself or the anchor plus a short
// finite offset.
Ordinal random_height_near(Rng& rng, const Ordinal& anchor, int max_offset = 3);

} // namespace wb
