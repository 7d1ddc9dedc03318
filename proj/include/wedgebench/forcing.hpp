#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wedgebench/aronszajn.hpp"

namespace wb {

using Rational = boost::multiprecision::cpp_rational;

// Tree adapters for conditions. Both provide the same members:
//   Node, Less, root, height, restrict, compare, is_successor, first_successor,
//   canonical_extension, contains, same_family, str.

// Finite tree given explicitly; heights are depths.
class ExplicitOps {
public:
    using Node = ExplicitTree::Id;
    using Less = std::less<Node>;

    // binary = true: nodes print as b:<bits>, using the tree's labels
    explicit ExplicitOps(std::shared_ptr<const ExplicitTree> t, bool binary = false);
    // Complete binary tree with `levels` levels.
    static ExplicitOps binary_fixture(int levels = 10);

    const ExplicitTree& tree() const { return *t_; }
    Node root() const;
    Ordinal height(Node x) const { return Ordinal(static_cast<unsigned long long>(t_->depth(x))); }
    Node restrict(Node x, const Ordinal& beta) const;
    TreeOrder compare(Node a, Node b) const { return t_->compare(a, b); }
    bool is_successor(Node k, Node v) const { return t_->parent(v) == k; }
    Node first_successor(Node x) const;
    Node canonical_extension(Node x, const Ordinal& alpha) const;
    bool contains(Node x) const { return t_->contains(x); }
    bool same_family(Node, Node) const { return true; }
    std::string str(Node x) const;
    // inverse of str for the binary fixture ("b:0101"); plain ids otherwise
    Node parse(const std::string& s) const;

private:
    std::shared_ptr<const ExplicitTree> t_;
    bool binary_;
};

// The symbolic families over one coherent system.
class SymOps {
public:
    using Node = SymNode;
    using Less = NodeLess;

    explicit SymOps(Trees tr, Family root_family = Family::u) : tr_(std::move(tr)), fam_(root_family) {}
    const Trees& trees() const { return tr_; }

    Node root() const;
    Ordinal height(const Node& x) const { return height_of(x); }
    Node restrict(const Node& x, const Ordinal& beta) const { return tr_.restrict(x, beta); }
    TreeOrder compare(const Node& a, const Node& b) const { return tr_.tree_le(a, b); }
    bool is_successor(const Node& k, const Node& v) const;
    Node first_successor(const Node& x) const;
    Node canonical_extension(const Node& x, const Ordinal& alpha) const { return tr_.canonical_extension(x, alpha); }
    bool contains(const Node& x) const;
    bool same_family(const Node& a, const Node& b) const { return a.index() == b.index(); }
    std::string str(const Node& x) const;

private:
    Trees tr_;
    Family fam_;
};

// Finite condition: key -> non-empty set of immediate successors.
template <class Ops>
using Condition = std::map<typename Ops::Node, std::set<typename Ops::Node, typename Ops::Less>, typename Ops::Less>;

template <class Ops>
using SpecCondition = std::map<typename Ops::Node, Rational, typename Ops::Less>;

// Why p is not a condition, or nullopt if it is one.
template <class Ops>
std::optional<std::string> condition_defect(const Ops& ops, const Condition<Ops>& p) {
    const typename Ops::Node* first = nullptr;
    for (auto& [k, vs] : p) {
        if (!ops.contains(k)) return "key " + ops.str(k) + " is not a tree node";
        if (first && !ops.same_family(*first, k)) return "keys " + ops.str(*first) + " and " + ops.str(k) + " lie in different trees";
        first = &k;
        if (vs.empty()) return "empty value at " + ops.str(k);
        for (auto& v : vs)
            if (!ops.same_family(k, v) || !ops.contains(v) || !ops.is_successor(k, v))
                return ops.str(v) + " is not an immediate successor of " + ops.str(k);
    }
    for (auto& [x, vx] : p)
        for (auto& [y, vy] : p) {
            if (ops.compare(x, y) != TreeOrder::below) continue;
            auto z = ops.restrict(y, ops.height(x).succ());
            if (!vx.count(z)) return "keys " + ops.str(x) + " < " + ops.str(y) + " but " + ops.str(z) + " is not promised at " + ops.str(x);
        }
    return std::nullopt;
}

template <class Ops>
bool is_valid_condition(const Ops& ops, const Condition<Ops>& p) {
    return !condition_defect(ops, p).has_value();
}

// p <= q: p extends q as a map
template <class Cond>
bool cond_leq(const Cond& p, const Cond& q) {
    for (auto& [k, v] : q) {
        auto it = p.find(k);
        if (it == p.end() || it->second != v) return false;
    }
    return true;
}

template <class Ops>
std::optional<Condition<Ops>> union_compatible(const Ops& ops, const Condition<Ops>& p, const Condition<Ops>& q) {
    Condition<Ops> r = p;
    for (auto& [k, v] : q) {
        auto [it, fresh] = r.emplace(k, v);
        if (!fresh && it->second != v) return std::nullopt;
    }
    if (!is_valid_condition(ops, r)) return std::nullopt;
    return r;
}

// For keys u < x: x restricted to h(u)+1 is promised at u. Exactly what a new
// key x with no key above it needs.
template <class Ops>
std::optional<typename Ops::Node> admissibility_failure(const Ops& ops, const Condition<Ops>& p, const typename Ops::Node& x) {
    for (auto& [u, vs] : p)
        if (ops.compare(u, x) == TreeOrder::below && !vs.count(ops.restrict(x, ops.height(u).succ()))) return u;
    return std::nullopt;
}

template <class Ops>
void certify_extension(const Ops& ops, const Condition<Ops>& r, const Condition<Ops>& p, const char* what) {
    if (!cond_leq(r, p)) throw Error(std::string(what) + ": result does not extend the input");
    if (auto d = condition_defect(ops, r)) throw Error(std::string(what) + ": result is not a condition: " + *d);
}

// r <= p with x in dom(r). If some key lies above x, x promises exactly the
// successors leading to those keys; otherwise x promises its first successor,
// which needs x admissible for p (always true when x is promised by a key, or
// lies below one).
template <class Ops>
Condition<Ops> extend_to_include(const Ops& ops, const Condition<Ops>& p, const typename Ops::Node& x) {
    if (auto d = condition_defect(ops, p)) throw DomainError("extend_to_include: input is not a condition: " + *d);
    if (!ops.contains(x)) throw DomainError("extend_to_include: " + ops.str(x) + " is not a tree node");
    if (!p.empty() && !ops.same_family(p.begin()->first, x))
        throw DomainError("extend_to_include: " + ops.str(x) + " lies in another tree");
    if (p.count(x)) return p;
    const Ordinal hx1 = ops.height(x).succ();
    std::set<typename Ops::Node, typename Ops::Less> a;
    for (auto& [t, vs] : p)
        if (ops.compare(x, t) == TreeOrder::below) a.insert(ops.restrict(t, hx1));
    if (a.empty()) {
        if (auto u = admissibility_failure(ops, p, x))
            throw DomainError("extend_to_include: " + ops.str(x) + " is not admissible: its successor toward it is not promised at key " +
                              ops.str(*u));
        a.insert(ops.first_successor(x));
    }
    Condition<Ops> r = p;
    r.emplace(x, std::move(a));
    certify_extension(ops, r, p, "extend_to_include");
    return r;
}

template <class Ops>
struct AboveResult {
    Condition<Ops> condition;
    typename Ops::Node key;     // a key of height >= alpha
    bool exact = false;         // height(key) == alpha
    bool unchanged = false;     // p already had such a key
};

// r <= p with a key of height >= alpha. With no such key in p, the new key has
// height exactly alpha: either the highest promised successor itself or the
// canonical extension of it to alpha.
template <class Ops>
AboveResult<Ops> extend_above(const Ops& ops, const Condition<Ops>& p, const Ordinal& alpha) {
    if (auto d = condition_defect(ops, p)) throw DomainError("extend_above: input is not a condition: " + *d);
    AboveResult<Ops> out;
    for (auto& [k, vs] : p)
        if (ops.height(k) >= alpha) {
            out.condition = p;
            out.key = k;
            out.exact = ops.height(k) == alpha;
            out.unchanged = true;
            return out;
        }
    Condition<Ops> r = p;
    typename Ops::Node z;
    if (p.empty()) {
        z = ops.canonical_extension(ops.root(), alpha);
        r.emplace(z, std::set<typename Ops::Node, typename Ops::Less>{ops.first_successor(z)});
    } else {
        // highest promised successor; ties go to the first in key order
        const typename Ops::Node* y = nullptr;
        for (auto& [k, vs] : p)
            for (auto& v : vs)
                if (!y || ops.height(v) > ops.height(*y)) y = &v;
        if (ops.height(*y) >= alpha) {
            z = *y;
            r = extend_to_include(ops, p, z);
        } else {
            z = ops.canonical_extension(*y, alpha);
            r.emplace(z, std::set<typename Ops::Node, typename Ops::Less>{ops.first_successor(z)});
        }
    }
    certify_extension(ops, r, p, "extend_above");
    out.condition = std::move(r);
    out.key = z;
    out.exact = ops.height(z) == alpha;
    return out;
}

// ---- Delta-systems

template <class T>
struct DeltaSystem {
    std::set<T> root;
    std::vector<std::size_t> members; // indices into the input, ascending
};

// First k-element sub-list (in index order) whose pairwise intersections all
// equal one root. Exhaustive with pruning; throws DomainError past `budget`
// search steps.
template <class T>
std::optional<DeltaSystem<T>> delta_system(const std::vector<std::set<T>>& sets, std::size_t k,
                                           std::uint64_t budget = 10000000) {
    if (k == 0) return DeltaSystem<T>{};
    if (sets.size() < k) return std::nullopt;
    if (k == 1) return DeltaSystem<T>{sets[0], {0}};
    auto meet = [](const std::set<T>& a, const std::set<T>& b) {
        std::set<T> r;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
        return r;
    };
    std::vector<std::size_t> chosen;
    std::set<T> root;
    std::uint64_t steps = 0;
    std::function<bool(std::size_t)> go = [&](std::size_t from) -> bool {
        if (chosen.size() == k) return true;
        for (std::size_t j = from; j + (k - chosen.size()) <= sets.size(); ++j) {
            if (++steps > budget) throw DomainError("delta_system: search budget exhausted");
            if (chosen.size() == 1) {
                root = meet(sets[chosen[0]], sets[j]);
            } else if (chosen.size() >= 2) {
                bool ok = true;
                for (auto c : chosen)
                    if (meet(sets[c], sets[j]) != root) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
            }
            chosen.push_back(j);
            if (go(j + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!go(0)) return std::nullopt;
    return DeltaSystem<T>{root, chosen};
}

// ---- Order preserving maps into the rationals

// The rational of least denominator (then least absolute numerator) in the
// open interval (lo, hi); a missing bound is infinite. Throws DomainError on
// an empty interval.
Rational simplest_between(const std::optional<Rational>& lo, const std::optional<Rational>& hi);

template <class Ops>
std::optional<std::string> spec_defect(const Ops& ops, const SpecCondition<Ops>& q) {
    for (auto& [x, a] : q)
        for (auto& [y, b] : q)
            if (ops.compare(x, y) == TreeOrder::below && !(a < b))
                return "keys " + ops.str(x) + " < " + ops.str(y) + " with values " + a.str() + " >= " + b.str();
    return std::nullopt;
}

// q is taken to be order preserving (see spec_defect); the new value is
// checked against every comparable key.
template <class Ops>
SpecCondition<Ops> spec_extend(const Ops& ops, const SpecCondition<Ops>& q, const typename Ops::Node& x) {
    if (q.count(x)) return q;
    std::optional<Rational> lo, hi;
    std::vector<std::pair<TreeOrder, const Rational*>> rel;
    for (auto& [k, v] : q) {
        auto o = ops.compare(k, x);
        if (o == TreeOrder::below && (!lo || v > *lo)) lo = v;
        if (o == TreeOrder::above && (!hi || v < *hi)) hi = v;
        if (o != TreeOrder::incomparable) rel.emplace_back(o, &v);
    }
    if (lo && hi && *lo >= *hi)
        throw DomainError("spec_extend: no value for " + ops.str(x) + " between " + lo->str() + " and " + hi->str());
    Rational val = simplest_between(lo, hi);
    for (auto& [o, v] : rel)
        if ((o == TreeOrder::below && !(*v < val)) || (o == TreeOrder::above && !(val < *v)))
            throw Error("spec_extend: value " + val.str() + " for " + ops.str(x) + " breaks the order");
    SpecCondition<Ops> r = q;
    r.emplace(x, std::move(val));
    return r;
}

// ---- Filter simulation

template <class Ops>
struct Target {
    enum class Kind { include, reach } kind = Kind::include;
    typename Ops::Node node{}; // include
    Ordinal level;             // reach
};

template <class Ops>
struct FilterReport {
    Condition<Ops> condition;
    std::vector<Ordinal> window;                    // materialized heights, ascending
    std::vector<typename Ops::Node> fragment;       // dom closed downward at window heights
    std::vector<std::string> steps;                 // one line per target
    bool valid = false;                             // final p is a condition
    bool extends_chain = false;                     // each step extended the previous one
    bool downward_closed = false;                   // within the window
    bool successors_promised = false;               // I_S(x) within the window is inside p(x)
    bool targets_met = false;
    std::vector<std::string> failures;

    bool ok() const { return valid && extends_chain && downward_closed && successors_promised && targets_met; }
};

// Heights below this bound are always part of the window (when they are at
// most the top key height).
inline constexpr unsigned kFilterFiniteWindow = 8;

template <class Ops>
FilterReport<Ops> simulate_filter(const Ops& ops, const std::vector<Target<Ops>>& targets, std::size_t budget) {
    if (targets.size() > budget)
        throw DomainError("simulate_filter: " + std::to_string(targets.size()) + " targets exceed the budget of " +
                          std::to_string(budget));
    using Node = typename Ops::Node;
    FilterReport<Ops> rep;
    Condition<Ops> p;
    rep.extends_chain = true;
    for (auto& tg : targets) {
        Condition<Ops> next;
        if (tg.kind == Target<Ops>::Kind::include) {
            next = extend_to_include(ops, p, tg.node);
            rep.steps.push_back("include(" + ops.str(tg.node) + "): " + std::to_string(next.size()) + " keys");
        } else {
            auto r = extend_above(ops, p, tg.level);
            next = std::move(r.condition);
            rep.steps.push_back("reach(" + tg.level.str() + "): key " + ops.str(r.key) + (r.exact ? " at" : " above") +
                                " the level" + (r.unchanged ? ", already present" : ""));
        }
        if (!cond_leq(next, p)) rep.extends_chain = false;
        p = std::move(next);
    }
    rep.condition = p;
    auto defect = condition_defect(ops, p);
    rep.valid = !defect;
    if (defect) rep.failures.push_back(*defect);

    std::set<Ordinal> window;
    std::optional<Ordinal> top;
    for (auto& [k, vs] : p) {
        window.insert(ops.height(k));
        window.insert(ops.height(k).succ());
        if (!top || ops.height(k) > *top) top = ops.height(k);
    }
    if (top)
        for (unsigned n = 0; n < kFilterFiniteWindow && Ordinal(n) <= *top; ++n) window.insert(Ordinal(n));
    rep.window.assign(window.begin(), window.end());

    std::set<Node, typename Ops::Less> frag;
    for (auto& [k, vs] : p)
        for (auto& b : window)
            if (b <= ops.height(k)) frag.insert(ops.restrict(k, b));
    rep.fragment.assign(frag.begin(), frag.end());

    rep.downward_closed = true;
    for (auto& s : frag)
        for (auto& b : window) {
            if (!(b < ops.height(s))) break;
            if (!frag.count(ops.restrict(s, b))) {
                rep.downward_closed = false;
                rep.failures.push_back("fragment misses " + ops.str(ops.restrict(s, b)) + " below " + ops.str(s));
            }
        }
    rep.successors_promised = true;
    for (auto& [x, vs] : p)
        for (auto& s : frag)
            if (ops.height(s) == ops.height(x).succ() && ops.compare(x, s) == TreeOrder::below && !vs.count(s)) {
                rep.successors_promised = false;
                rep.failures.push_back(ops.str(s) + " is in the fragment above " + ops.str(x) + " but not promised there");
            }
    rep.targets_met = true;
    for (auto& tg : targets) {
        bool met = false;
        if (tg.kind == Target<Ops>::Kind::include) {
            met = p.count(tg.node) != 0;
        } else {
            for (auto& [k, vs] : p)
                if (ops.height(k) >= tg.level) met = true;
        }
        if (!met) {
            rep.targets_met = false;
            rep.failures.push_back("target not met");
        }
    }
    return rep;
}

} // namespace wb
