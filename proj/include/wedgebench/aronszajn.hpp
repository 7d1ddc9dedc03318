#pragma once

#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "wedgebench/coherent.hpp"
#include "wedgebench/explicit_tree.hpp"

namespace wb {

// s : height -> omega injective with s =* e_height; delta holds exactly the
// points where s differs from e_height.
struct TeNode {
    Ordinal height;
    std::map<Ordinal, Natural> delta;
    friend bool operator==(const TeNode&, const TeNode&) = default;
};

// x in 2^height: x_gamma flipped on `flips` below gamma = gamma_height, then
// explicit bits on [gamma, height).
struct TNode {
    Ordinal height;
    std::vector<Ordinal> flips; // sorted, all < gamma
    std::vector<bool> tail;
    friend bool operator==(const TNode&, const TNode&) = default;
};

// A U component covers [start, end): a digit covers one point, a tail covers
// [start, t.height) with the values of t. Starts are implicit.
struct UComp {
    std::optional<TNode> tail;
    Natural digit;
    static UComp make_digit(Natural d) { return UComp{std::nullopt, std::move(d)}; }
    static UComp make_tail(TNode t) { return UComp{std::move(t), 0}; }
    bool is_digit() const { return !tail.has_value(); }
    friend bool operator==(const UComp&, const UComp&) = default;
};

// Always kept in normal form (see UFamily canon); equality is structural.
struct UNode {
    std::vector<UComp> comps;
    Ordinal height;
    friend bool operator==(const UNode&, const UNode&) = default;
};

enum class Family { te, t, u };
const char* to_string(Family f);

using SymNode = std::variant<TeNode, TNode, UNode>;

Family family_of(const SymNode& x);
const Ordinal& height_of(const SymNode& x);

// Total order on nodes for use as map keys (not the tree order).
bool node_less(const TNode& a, const TNode& b);
bool node_less(const TeNode& a, const TeNode& b);
bool node_less(const UNode& a, const UNode& b);
bool node_less(const SymNode& a, const SymNode& b);
struct NodeLess {
    template <class A>
    bool operator()(const A& a, const A& b) const { return node_less(a, b); }
};

template <class Node>
struct Stream {
    std::vector<Node> nodes;
    bool truncated = false;
};

// Binary-valued node over foreign data: x_anchor restricted to `height`,
// optionally complemented, then flipped on `flips`. Used to exercise the
// membership decision for T against representations it did not produce.
struct ForeignBits {
    Ordinal anchor; // limit-or-zero, >= height
    Ordinal height;
    bool complement = false;
    std::vector<Ordinal> flips;
};

// The three tree families over one coherent system. Cheap to copy; shares the
// system's memo tables.
class Trees {
public:
    explicit Trees(std::shared_ptr<const CoherentSystem> cs, std::uint64_t range_budget = 100000);
    Trees();

    const CoherentSystem& system() const { return *cs_; }
    std::shared_ptr<const CoherentSystem> system_ptr() const { return cs_; }
    std::uint64_t range_budget() const { return range_budget_; }

    // ---- T^e
    TeNode te_node(const Ordinal& height, const std::map<Ordinal, Natural>& delta) const;
    Natural te_query(const TeNode& x, const Ordinal& xi) const;
    TeNode te_restrict(const TeNode& x, const Ordinal& beta) const;
    bool te_in_range(const TeNode& x, const Natural& v) const;
    Stream<TeNode> te_successors(const TeNode& x, std::size_t budget) const;
    Stream<TeNode> te_level(const Ordinal& alpha, std::size_t budget) const;
    TeNode te_canonical_extension(const TeNode& x, const Ordinal& alpha) const;
    TeNode te_root() const { return TeNode{}; }

    // ---- T
    TNode x_alpha(const Ordinal& alpha) const;
    bool x_bit(const Ordinal& gamma, const Ordinal& eta) const; // x_gamma(eta), eta < gamma
    std::vector<Ordinal> delta_x(const Ordinal& alpha, const Ordinal& beta) const;
    std::vector<Ordinal> delta_x_candidates(const Ordinal& alpha, const Ordinal& beta) const;
    TNode t_node(const Ordinal& height, std::vector<Ordinal> flips, std::vector<bool> tail) const;
    bool t_query(const TNode& x, const Ordinal& eta) const;
    TNode t_restrict(const TNode& x, const Ordinal& beta) const;
    Stream<TNode> t_successors(const TNode& x) const;
    Stream<TNode> t_level(const Ordinal& alpha, std::size_t budget) const;
    TNode t_canonical_extension(const TNode& x, const Ordinal& alpha) const;
    TNode t_append(const TNode& x, bool bit) const;
    TNode t_root() const { return TNode{}; }
    bool t_contains(const ForeignBits& y) const;
    std::optional<TNode> t_from_foreign(const ForeignBits& y) const;
    bool foreign_query(const ForeignBits& y, const Ordinal& eta) const;

    // ---- U
    UNode u_node(const std::vector<UComp>& comps) const; // validates, normalizes
    bool u_well_formed(const UNode& x, std::string* why = nullptr) const;
    UNode u_embed_T(const TNode& t) const;
    UNode u_glue(const UNode& u, const TNode& t) const;
    UNode u_append(const UNode& u, const Natural& digit) const;
    Natural u_query(const UNode& x, const Ordinal& xi) const;
    UNode u_restrict(const UNode& x, const Ordinal& beta) const;
    Stream<UNode> u_successors(const UNode& x, std::size_t budget) const;
    Stream<UNode> u_level(const Ordinal& alpha, std::size_t budget) const;
    UNode u_canonical_extension(const UNode& x, const Ordinal& alpha) const;
    UNode u_root() const { return UNode{}; }
    bool u_in_T(const UNode& x) const;
    std::optional<TNode> u_to_T(const UNode& x) const;
    // Non-bit digits of x as (position, digit), in order.
    std::vector<std::pair<Ordinal, Natural>> u_nonbit_digits(const UNode& x) const;

    // ---- generic
    Natural node_query(const SymNode& x, const Ordinal& xi) const;
    SymNode restrict(const SymNode& x, const Ordinal& beta) const;
    TreeOrder tree_le(const SymNode& x, const SymNode& y) const;
    TreeOrder compare(const TNode& x, const TNode& y) const;
    TreeOrder compare(const TeNode& x, const TeNode& y) const;
    TreeOrder compare(const UNode& x, const UNode& y) const;
    SymNode canonical_extension(const SymNode& x, const Ordinal& alpha) const;
    Stream<SymNode> enumerate_successors(const SymNode& x, std::size_t budget) const;
    Stream<SymNode> enumerate_level(Family f, const Ordinal& alpha, std::size_t budget) const;

private:
    std::vector<UComp> canon(const std::vector<UComp>& comps, std::size_t count,
                             const std::vector<Ordinal>& starts) const;
    std::map<Ordinal, Natural> te_rebase(const TeNode& x, const Ordinal& beta) const;

    std::shared_ptr<const CoherentSystem> cs_;
    std::uint64_t range_budget_;
};

// Positions eta in [lo, hi) with godel_code(eta) < limit, ascending by code.
std::vector<Ordinal> positions_by_code(const Ordinal& lo, const Ordinal& hi, std::uint64_t limit);

} // namespace wb
