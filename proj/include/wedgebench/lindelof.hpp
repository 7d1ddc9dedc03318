#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wedgebench/wedge.hpp"

namespace wb {

// Finite analogue of the countable-subcover results. Levels run over
// 0..cutoff, with the empty level past the last one allowed. For each cover:
//   NS(a)  no safe point at level a
//   P3(a)  every node at level a lies in a wedge of some node below a
//   P2(a)  the wedges of the nodes below a cover the whole tree
// and NS <=> P3 <=> P2 is required at every level. The limit-only version of
// P2 is tallied separately; on a finite tree 0 is the only limit level.
struct LindelofReport {
    std::string tree;
    std::string method; // "enumeration" or "counting"
    int cutoff = 0;
    std::size_t max_set = 0;
    Natural covers;            // covers examined (enumeration) or counted
    Natural expected_covers;   // product of per-node option counts
    Natural counterexamples;   // covers violating NS <=> P3 <=> P2 somewhere
    Natural closure_failures;  // safe node with an unsafe parent
    Natural successor_failures; // safe x, child z: safe(z) != (z in f(x))
    Natural engine_mismatches; // engine is_safe differs from the definition
    Natural limit_divergences; // (exists a: P3) != (exists limit a: P2)
    // covers by the least level without a safe point
    std::map<int, Natural> first_unsafe_level;
    std::vector<std::string> witnesses;
    bool checks_engine = false;

    bool ok() const {
        return covers == expected_covers && counterexamples == 0 && closure_failures == 0 &&
               successor_failures == 0 && engine_mismatches == 0;
    }
};

// Every cover with |f(x)| <= max_set; throws DomainError when the number of
// covers exceeds `bound`.
LindelofReport lindelof_enumerate(const WedgeEngine& eng, const ExplicitTree& t, std::size_t max_set, int cutoff,
                                  const Natural& bound);

// Complete arity-ary tree with `levels` levels, covering the same family of
// covers by dynamic programming over subtree outcomes.
LindelofReport lindelof_count(int arity, int levels, std::size_t max_set, int cutoff);

} // namespace wb
