#include <algorithm>

#include "wedgebench/aronszajn.hpp"

namespace wb {

const char* to_string(Family f) {
    switch (f) {
    case Family::te: return "te";
    case Family::t: return "t";
    case Family::u: return "u";
    }
    return "?";
}

Family family_of(const SymNode& x) { return static_cast<Family>(x.index()); }

const Ordinal& height_of(const SymNode& x) {
    return std::visit([](const auto& n) -> const Ordinal& { return n.height; }, x);
}

namespace {

template <class A, class B, class Less>
bool lex_less(const A& a, const B& b, Less less) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), less);
}

} // namespace

bool node_less(const TNode& a, const TNode& b) {
    if (a.height != b.height) return a.height < b.height;
    if (a.flips != b.flips) return a.flips < b.flips;
    return a.tail < b.tail;
}

bool node_less(const TeNode& a, const TeNode& b) {
    if (a.height != b.height) return a.height < b.height;
    return lex_less(a.delta, b.delta, [](const auto& x, const auto& y) {
        if (x.first != y.first) return x.first < y.first;
        return x.second < y.second;
    });
}

bool node_less(const UNode& a, const UNode& b) {
    if (a.height != b.height) return a.height < b.height;
    return lex_less(a.comps, b.comps, [](const UComp& x, const UComp& y) {
        if (x.is_digit() != y.is_digit()) return x.is_digit();
        if (x.is_digit()) return x.digit < y.digit;
        return node_less(*x.tail, *y.tail);
    });
}

bool node_less(const SymNode& a, const SymNode& b) {
    if (a.index() != b.index()) return a.index() < b.index();
    return std::visit(
        [&](const auto& x) {
            using N = std::decay_t<decltype(x)>;
            return node_less(x, std::get<N>(b));
        },
        a);
}

namespace {

template <class N, class R>
TreeOrder compare_by_restrict(const N& x, const N& y, R restrict) {
    if (x.height == y.height) return x == y ? TreeOrder::equal : TreeOrder::incomparable;
    if (x.height < y.height) return restrict(y, x.height) == x ? TreeOrder::below : TreeOrder::incomparable;
    return restrict(x, y.height) == y ? TreeOrder::above : TreeOrder::incomparable;
}

} // namespace

TreeOrder Trees::compare(const TNode& x, const TNode& y) const {
    return compare_by_restrict(x, y, [&](const TNode& n, const Ordinal& b) { return t_restrict(n, b); });
}
TreeOrder Trees::compare(const TeNode& x, const TeNode& y) const {
    return compare_by_restrict(x, y, [&](const TeNode& n, const Ordinal& b) { return te_restrict(n, b); });
}
TreeOrder Trees::compare(const UNode& x, const UNode& y) const {
    return compare_by_restrict(x, y, [&](const UNode& n, const Ordinal& b) { return u_restrict(n, b); });
}

Natural Trees::node_query(const SymNode& x, const Ordinal& xi) const {
    switch (family_of(x)) {
    case Family::te: return te_query(std::get<TeNode>(x), xi);
    case Family::t: return t_query(std::get<TNode>(x), xi) ? 1 : 0;
    case Family::u: return u_query(std::get<UNode>(x), xi);
    }
    throw DomainError("node_query: bad family");
}

SymNode Trees::restrict(const SymNode& x, const Ordinal& beta) const {
    switch (family_of(x)) {
    case Family::te: return te_restrict(std::get<TeNode>(x), beta);
    case Family::t: return t_restrict(std::get<TNode>(x), beta);
    case Family::u: return u_restrict(std::get<UNode>(x), beta);
    }
    throw DomainError("restrict: bad family");
}

TreeOrder Trees::tree_le(const SymNode& x, const SymNode& y) const {
    if (x.index() != y.index())
        throw DomainError(std::string("tree_le: family mismatch (") + to_string(family_of(x)) + " vs " +
                          to_string(family_of(y)) + ")");
    switch (family_of(x)) {
    case Family::te: return compare(std::get<TeNode>(x), std::get<TeNode>(y));
    case Family::t: return compare(std::get<TNode>(x), std::get<TNode>(y));
    case Family::u: return compare(std::get<UNode>(x), std::get<UNode>(y));
    }
    throw DomainError("tree_le: bad family");
}

SymNode Trees::canonical_extension(const SymNode& x, const Ordinal& alpha) const {
    switch (family_of(x)) {
    case Family::te: return te_canonical_extension(std::get<TeNode>(x), alpha);
    case Family::t: return t_canonical_extension(std::get<TNode>(x), alpha);
    case Family::u: return u_canonical_extension(std::get<UNode>(x), alpha);
    }
    throw DomainError("canonical_extension: bad family");
}

namespace {

template <class N>
Stream<SymNode> widen(Stream<N> s) {
    Stream<SymNode> out;
    out.truncated = s.truncated;
    for (auto& n : s.nodes) out.nodes.emplace_back(std::move(n));
    return out;
}

} // namespace

Stream<SymNode> Trees::enumerate_successors(const SymNode& x, std::size_t budget) const {
    switch (family_of(x)) {
    case Family::te: return widen(te_successors(std::get<TeNode>(x), budget));
    case Family::t: {
        auto s = t_successors(std::get<TNode>(x));
        if (s.nodes.size() > budget) {
            s.nodes.resize(budget);
            s.truncated = true;
        }
        return widen(std::move(s));
    }
    case Family::u: return widen(u_successors(std::get<UNode>(x), budget));
    }
    throw DomainError("enumerate: bad family");
}

Stream<SymNode> Trees::enumerate_level(Family f, const Ordinal& alpha, std::size_t budget) const {
    switch (f) {
    case Family::te: return widen(te_level(alpha, budget));
    case Family::t: return widen(t_level(alpha, budget));
    case Family::u: return widen(u_level(alpha, budget));
    }
    throw DomainError("enumerate: bad family");
}

} // namespace wb
