#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wedgebench/ordinal.hpp"

namespace wb {

enum class TreeOrder { below, equal, above, incomparable };
const char* to_string(TreeOrder o);

// Finite forest given by parent links; children keep insertion order. Height
// is the number of levels (a lone root has height 1).
class ExplicitTree {
public:
    using Id = std::int64_t;

    // One node per line: "id parent_id", parent "-" (or -1) for roots.
    // '#' starts a comment.
    static ExplicitTree parse(std::string_view text);
    static ExplicitTree load(const std::string& path);
    // Complete k-ary tree with the given number of levels; ids are assigned
    // breadth first, labels are digit strings ("" for the root).
    static ExplicitTree complete(int arity, int levels);

    void add(Id id, std::optional<Id> parent, std::string label = {});

    bool contains(Id x) const { return index_.count(x) != 0; }
    std::optional<Id> parent(Id x) const { return at(x).parent; }
    const std::vector<Id>& children(Id x) const { return at(x).children; }
    int depth(Id x) const { return at(x).depth; }
    const std::string& label(Id x) const { return at(x).label; }
    std::optional<Id> find_label(const std::string& label) const;

    const std::vector<Id>& nodes() const { return order_; }
    std::vector<Id> roots() const;
    std::vector<Id> level(int d) const;
    int height() const;
    std::size_t size() const { return order_.size(); }

    Id ancestor_at(Id x, int d) const;
    bool le(Id a, Id b) const;
    TreeOrder compare(Id a, Id b) const;
    bool is_chain(const std::vector<Id>& b) const;

    std::string to_text() const;

private:
    struct Node {
        std::optional<Id> parent;
        std::vector<Id> children;
        int depth = 0;
        std::string label;
    };
    const Node& at(Id x) const;

    std::map<Id, Node> index_;
    std::vector<Id> order_;
};

// For each x in the chain b, the first child of x outside b. Throws
// DomainError if b is not a chain or some member has no child outside b.
std::vector<ExplicitTree::Id> branch_to_antichain(const ExplicitTree& t, const std::vector<ExplicitTree::Id>& b);

} // namespace wb
