#include "wedgebench/explicit_tree.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace wb {

const char* to_string(TreeOrder o) {
    switch (o) {
    case TreeOrder::below: return "below";
    case TreeOrder::equal: return "equal";
    case TreeOrder::above: return "above";
    case TreeOrder::incomparable: return "incomparable";
    }
    return "?";
}

const ExplicitTree::Node& ExplicitTree::at(Id x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw DomainError("node " + std::to_string(x) + " is not in the tree");
    return it->second;
}

void ExplicitTree::add(Id id, std::optional<Id> parent, std::string label) {
    if (index_.count(id)) throw DomainError("duplicate node id " + std::to_string(id));
    Node n;
    n.parent = parent;
    n.label = std::move(label);
    if (parent) {
        auto it = index_.find(*parent);
        if (it == index_.end()) throw DomainError("unknown parent " + std::to_string(*parent));
        n.depth = it->second.depth + 1;
        it->second.children.push_back(id);
    }
    index_.emplace(id, std::move(n));
    order_.push_back(id);
}

ExplicitTree ExplicitTree::parse(std::string_view text) {
    std::vector<std::pair<Id, std::optional<Id>>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;
        if (!(ls >> b) || (ls >> extra)) throw ParseError("expected 'id parent_id'", lineno);
        try {
            Id id = std::stoll(a);
            std::optional<Id> p;
            if (b != "-" && b != "-1") p = std::stoll(b);
            rows.emplace_back(id, p);
        } catch (const std::logic_error&) {
            throw ParseError("bad node id", lineno);
        }
    }
    ExplicitTree t;
    // parents may be listed after their children
    std::vector<bool> done(rows.size(), false);
    std::size_t left = rows.size();
    while (left > 0) {
        std::size_t before = left;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (done[i]) continue;
            auto [id, p] = rows[i];
            if (p && !t.contains(*p)) continue;
            t.add(id, p, std::to_string(id));
            done[i] = true;
            --left;
        }
        if (left == before) throw DomainError("tree text has a cycle or a missing parent");
    }
    if (t.roots().empty()) throw DomainError("tree has no root");
    return t;
}

ExplicitTree ExplicitTree::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open tree file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

ExplicitTree ExplicitTree::complete(int arity, int levels) {
    if (arity < 1 || levels < 1) throw DomainError("complete tree needs arity >= 1 and levels >= 1");
    ExplicitTree t;
    t.add(0, std::nullopt, "");
    std::vector<Id> frontier{0};
    Id next = 1;
    for (int d = 1; d < levels; ++d) {
        std::vector<Id> nf;
        for (Id p : frontier)
            for (int c = 0; c < arity; ++c) {
                t.add(next, p, t.label(p) + char('0' + c));
                nf.push_back(next++);
            }
        frontier = std::move(nf);
    }
    return t;
}

std::optional<ExplicitTree::Id> ExplicitTree::find_label(const std::string& label) const {
    for (Id x : order_)
        if (at(x).label == label) return x;
    return std::nullopt;
}

std::vector<ExplicitTree::Id> ExplicitTree::roots() const {
    std::vector<Id> r;
    for (Id x : order_)
        if (!at(x).parent) r.push_back(x);
    return r;
}

std::vector<ExplicitTree::Id> ExplicitTree::level(int d) const {
    std::vector<Id> r;
    for (Id x : order_)
        if (at(x).depth == d) r.push_back(x);
    return r;
}

int ExplicitTree::height() const {
    int h = 0;
    for (Id x : order_) h = std::max(h, at(x).depth + 1);
    return h;
}

ExplicitTree::Id ExplicitTree::ancestor_at(Id x, int d) const {
    if (d < 0 || d > depth(x)) throw DomainError("ancestor depth out of range");
    while (depth(x) > d) x = *parent(x);
    return x;
}

bool ExplicitTree::le(Id a, Id b) const { return depth(a) <= depth(b) && ancestor_at(b, depth(a)) == a; }

TreeOrder ExplicitTree::compare(Id a, Id b) const {
    if (a == b) return TreeOrder::equal;
    if (le(a, b)) return TreeOrder::below;
    if (le(b, a)) return TreeOrder::above;
    return TreeOrder::incomparable;
}

bool ExplicitTree::is_chain(const std::vector<Id>& b) const {
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = i + 1; j < b.size(); ++j)
            if (compare(b[i], b[j]) == TreeOrder::incomparable) return false;
    return true;
}

std::string ExplicitTree::to_text() const {
    std::string out;
    for (Id x : order_) {
        out += std::to_string(x) + ' ';
        out += parent(x) ? std::to_string(*parent(x)) : std::string("-");
        out += '\n';
    }
    return out;
}

std::vector<ExplicitTree::Id> branch_to_antichain(const ExplicitTree& t, const std::vector<ExplicitTree::Id>& b) {
    if (!t.is_chain(b)) throw DomainError("branch_to_antichain: input is not a chain");
    std::set<ExplicitTree::Id> in_b(b.begin(), b.end());
    std::vector<ExplicitTree::Id> out;
    for (auto x : b) {
        std::optional<ExplicitTree::Id> pick;
        for (auto c : t.children(x))
            if (!in_b.count(c)) {
                pick = c;
                break;
            }
        if (!pick) throw DomainError("branch_to_antichain: node " + std::to_string(x) + " has no child outside the chain");
        out.push_back(*pick);
    }
    return out;
}

} // namespace wb
