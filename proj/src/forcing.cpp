#include "wedgebench/forcing.hpp"

#include "wedgebench/literals.hpp"

namespace wb {

ExplicitOps::ExplicitOps(std::shared_ptr<const ExplicitTree> t, bool binary) : t_(std::move(t)), binary_(binary) {
    if (!t_ || t_->roots().size() != 1) throw DomainError("conditions need a tree with exactly one root");
}

ExplicitOps ExplicitOps::binary_fixture(int levels) {
    return ExplicitOps(std::make_shared<const ExplicitTree>(ExplicitTree::complete(2, levels)), true);
}

ExplicitOps::Node ExplicitOps::root() const { return t_->roots().front(); }

ExplicitOps::Node ExplicitOps::restrict(Node x, const Ordinal& beta) const {
    auto d = beta.as_natural();
    if (!d || *d > t_->depth(x)) throw DomainError("restrict: height above the node");
    return t_->ancestor_at(x, static_cast<int>(*d));
}

ExplicitOps::Node ExplicitOps::first_successor(Node x) const {
    const auto& ch = t_->children(x);
    if (ch.empty()) throw DomainError("node " + str(x) + " has no successors in the fixture");
    return ch.front();
}

ExplicitOps::Node ExplicitOps::canonical_extension(Node x, const Ordinal& alpha) const {
    auto a = alpha.as_natural();
    if (!a || *a >= t_->height()) throw DomainError("level " + alpha.str() + " is not materialized in the fixture");
    if (*a < t_->depth(x)) throw DomainError("canonical_extension: target below height");
    while (t_->depth(x) < *a) {
        const auto& ch = t_->children(x);
        if (ch.empty()) throw DomainError("no node at level " + alpha.str() + " above " + str(x));
        x = ch.front();
    }
    return x;
}

std::string ExplicitOps::str(Node x) const {
    if (binary_) return "b:" + t_->label(x);
    return std::to_string(x);
}

ExplicitOps::Node ExplicitOps::parse(const std::string& s) const {
    if (binary_) {
        if (s.rfind("b:", 0) != 0) throw ParseError("expected a binary node literal b:<bits>", 0);
        for (std::size_t i = 2; i < s.size(); ++i)
            if (s[i] != '0' && s[i] != '1') throw ParseError("expected a bit", i);
        auto id = t_->find_label(s.substr(2));
        if (!id) throw DomainError("node " + s + " is not in the fixture");
        return *id;
    }
    std::size_t used = 0;
    Node id = std::stoll(s, &used);
    if (used != s.size()) throw ParseError("expected a node id", used);
    if (!t_->contains(id)) throw DomainError("no node " + s);
    return id;
}

SymOps::Node SymOps::root() const {
    switch (fam_) {
    case Family::te: return tr_.te_root();
    case Family::t: return tr_.t_root();
    case Family::u: return tr_.u_root();
    }
    throw DomainError("bad family");
}

bool SymOps::is_successor(const Node& k, const Node& v) const {
    if (!same_family(k, v) || height(v) != height(k).succ()) return false;
    return restrict(v, height(k)) == k;
}

SymOps::Node SymOps::first_successor(const Node& x) const {
    auto s = tr_.enumerate_successors(x, 1);
    if (s.nodes.empty()) throw DomainError("node without successors");
    return s.nodes.front();
}

bool SymOps::contains(const Node& x) const {
    if (auto u = std::get_if<UNode>(&x)) return tr_.u_well_formed(*u);
    return true;
}

std::string SymOps::str(const Node& x) const { return format_node(x); }

namespace {

Rational floor_of(const Rational& q) {
    Natural n = numerator(q), d = denominator(q);
    Natural f = n / d;
    if (n < 0 && f * d != n) f -= 1;
    return Rational(f);
}

// simplest in (lo, hi) with 0 <= lo < hi; hi missing means infinity
Rational simplest_nonneg(const Rational& lo, const std::optional<Rational>& hi) {
    Rational f = floor_of(lo);
    if (!hi || f + 1 < *hi) return f + 1;
    // lo and hi share the integer part f: recurse on the reciprocals
    std::optional<Rational> inv_hi;
    if (lo != f) inv_hi = 1 / (lo - f);
    return f + 1 / simplest_nonneg(1 / (*hi - f), inv_hi);
}

} // namespace

Rational simplest_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi) {
    if (lo && hi && *lo >= *hi) throw DomainError("simplest_between: empty interval");
    if ((!lo || *lo < 0) && (!hi || *hi > 0)) return 0;
    if (lo && *lo >= 0) return simplest_nonneg(*lo, hi);
    // hi <= 0: mirror
    return -simplest_nonneg(-*hi, lo ? std::optional<Rational>(-*lo) : std::nullopt);
}

} // namespace wb
