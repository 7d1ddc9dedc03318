#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wedgebench/aronszajn.hpp"

namespace wb {

struct CoverRule;
using CoverPtr = std::shared_ptr<const CoverRule>;

// Downward closed subsets of U with a decidable membership test.
struct Subtree {
    enum class Kind { t_in_u, truncated, safe };
    Kind kind = Kind::t_in_u;
    std::shared_ptr<const Subtree> base; // truncated
    Ordinal height;                      // truncated: members have height < this
    CoverPtr cover;                      // safe: the safe points of this cover

    static std::shared_ptr<const Subtree> t_in_u();
    static std::shared_ptr<const Subtree> truncated(std::shared_ptr<const Subtree> s, Ordinal h);
    static std::shared_ptr<const Subtree> safe(CoverPtr f);
};
using SubtreePtr = std::shared_ptr<const Subtree>;

using UTable = std::map<UNode, std::vector<UNode>, NodeLess>;

// f(x) = I(x) cap S
struct SubtreeCover {
    SubtreePtr s;
};
// table entries override base
struct PatchedCover {
    CoverPtr base;
    UTable table;
};
// finite cover over an explicit tree; missing ids map to the empty set
struct TableCover {
    std::shared_ptr<const ExplicitTree> tree;
    std::map<ExplicitTree::Id, std::vector<ExplicitTree::Id>> f;
};

struct CoverRule {
    std::variant<SubtreeCover, PatchedCover, TableCover> rule;
    bool is_table() const { return rule.index() == 2; }
};

CoverPtr subtree_cover(SubtreePtr s);
CoverPtr table_cover(std::shared_ptr<const ExplicitTree> tree,
                     std::map<ExplicitTree::Id, std::vector<ExplicitTree::Id>> f);
// f(x) = I(x) cap S for S given as an explicit node set (must be downward closed)
CoverPtr table_cover_from_subtree(std::shared_ptr<const ExplicitTree> tree, const std::vector<ExplicitTree::Id>& s);

struct Wedge {
    SymNode apex;
    std::vector<SymNode> excluded; // immediate successors of apex
};

using CoverPoint = std::variant<UNode, ExplicitTree::Id>;

struct SafeSearch {
    std::optional<CoverPoint> point;
    bool decided = true; // false: gave up within budget
};

class WedgeEngine {
public:
    explicit WedgeEngine(Trees trees) : tr_(std::move(trees)) {}
    const Trees& trees() const { return tr_; }

    Wedge make_wedge(SymNode apex, std::vector<SymNode> excluded) const;
    bool wedge_contains(const Wedge& w, const SymNode& y) const;

    CoverPtr patched(CoverPtr base, UTable table) const;

    std::vector<UNode> eval_cover(const CoverRule& f, const UNode& x) const;
    std::vector<ExplicitTree::Id> eval_cover(const TableCover& f, ExplicitTree::Id x) const;
    bool member(const Subtree& s, const UNode& x) const;

    bool is_safe(const CoverRule& f, const CoverPoint& x) const;
    bool is_safe(const CoverRule& f, const UNode& x) const;
    bool is_safe(const TableCover& f, ExplicitTree::Id x) const;

    // Exact for every rule this engine accepts; `budget` caps the candidate
    // checks and a search that runs out reports decided = false.
    SafeSearch find_safe_point(const CoverRule& f, const Ordinal& alpha, std::size_t budget = 100000) const;
    bool covers_within(const CoverRule& f, const Ordinal& alpha) const;

    SubtreePtr safe_subtree(CoverPtr f) const { return Subtree::safe(std::move(f)); }
    std::vector<ExplicitTree::Id> safe_set(const TableCover& f) const;

    // length of the common initial segment of two T nodes
    Ordinal t_meet(const TNode& a, const TNode& b) const;

private:
    struct Flat {
        const Subtree* s = nullptr;
        UTable table;
    };
    struct Desc {
        std::optional<Ordinal> bound; // T part: heights <= bound
        std::vector<TNode> blocked;   // T part: outside the cones above these
        std::vector<UNode> extra;     // patch values, checked one by one with is_safe
    };
    Flat flatten(const CoverRule& f) const;
    std::vector<UNode> subtree_children(const Subtree& s, const UNode& x) const;
    bool prefix_in(const Subtree& s, const UNode& x) const;
    Desc prefix_desc(const Subtree& s) const;
    Desc safe_desc(const CoverRule& f) const;
    std::optional<TNode> avoid(const TNode& y, const std::vector<TNode>& blocked, const Ordinal& alpha) const;
    const TableCover& table_of(const CoverRule& f) const;

    Trees tr_;
};

} // namespace wb
