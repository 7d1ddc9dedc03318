#include "wedgebench/wedge.hpp"

#include <algorithm>
#include <set>

namespace wb {

SubtreePtr Subtree::t_in_u() {
    static const SubtreePtr t = std::make_shared<const Subtree>();
    return t;
}

SubtreePtr Subtree::truncated(SubtreePtr s, Ordinal h) {
    if (!s) throw DomainError("truncated: null subtree");
    auto r = std::make_shared<Subtree>();
    r->kind = Kind::truncated;
    r->base = std::move(s);
    r->height = std::move(h);
    return r;
}

SubtreePtr Subtree::safe(CoverPtr f) {
    if (!f) throw DomainError("safe: null cover");
    if (f->is_table()) throw DomainError("safe: table covers live on explicit trees");
    auto r = std::make_shared<Subtree>();
    r->kind = Kind::safe;
    r->cover = std::move(f);
    return r;
}

CoverPtr subtree_cover(SubtreePtr s) {
    if (!s) throw DomainError("subtree_cover: null subtree");
    return std::make_shared<const CoverRule>(CoverRule{SubtreeCover{std::move(s)}});
}

CoverPtr table_cover(std::shared_ptr<const ExplicitTree> tree,
                     std::map<ExplicitTree::Id, std::vector<ExplicitTree::Id>> f) {
    if (!tree) throw DomainError("table_cover: null tree");
    for (auto& [x, ys] : f) {
        if (!tree->contains(x)) throw DomainError("table_cover: unknown node " + std::to_string(x));
        std::sort(ys.begin(), ys.end());
        if (std::adjacent_find(ys.begin(), ys.end()) != ys.end())
            throw DomainError("table_cover: repeated successor at " + std::to_string(x));
        for (auto y : ys)
            if (!tree->contains(y) || tree->parent(y) != x)
                throw DomainError("table_cover: " + std::to_string(y) + " is not an immediate successor of " +
                                  std::to_string(x));
    }
    return std::make_shared<const CoverRule>(CoverRule{TableCover{std::move(tree), std::move(f)}});
}

CoverPtr table_cover_from_subtree(std::shared_ptr<const ExplicitTree> tree, const std::vector<ExplicitTree::Id>& s) {
    std::set<ExplicitTree::Id> in(s.begin(), s.end());
    for (auto x : in) {
        if (!tree->contains(x)) throw DomainError("subtree: unknown node " + std::to_string(x));
        if (auto p = tree->parent(x); p && !in.count(*p))
            throw DomainError("subtree: not downward closed at " + std::to_string(x));
    }
    std::map<ExplicitTree::Id, std::vector<ExplicitTree::Id>> f;
    for (auto x : tree->nodes())
        for (auto c : tree->children(x))
            if (in.count(c)) f[x].push_back(c);
    return table_cover(std::move(tree), std::move(f));
}

// ---- wedges

Wedge WedgeEngine::make_wedge(SymNode apex, std::vector<SymNode> excluded) const {
    Ordinal h1 = height_of(apex).succ();
    for (auto& z : excluded) {
        if (family_of(z) != family_of(apex)) throw DomainError("wedge: family mismatch");
        if (height_of(z) != h1 || tr_.tree_le(apex, z) != TreeOrder::below)
            throw DomainError("wedge: excluded node is not an immediate successor of the apex");
    }
    return Wedge{std::move(apex), std::move(excluded)};
}

bool WedgeEngine::wedge_contains(const Wedge& w, const SymNode& y) const {
    auto o = tr_.tree_le(w.apex, y);
    if (o != TreeOrder::below && o != TreeOrder::equal) return false;
    for (auto& z : w.excluded) {
        auto q = tr_.tree_le(z, y);
        if (q == TreeOrder::below || q == TreeOrder::equal) return false;
    }
    return true;
}

// ---- covers

CoverPtr WedgeEngine::patched(CoverPtr base, UTable table) const {
    if (!base) throw DomainError("patched: null base");
    if (base->is_table()) throw DomainError("patched: base must be a structured cover");
    for (auto& [k, vs] : table) {
        std::string why;
        if (!tr_.u_well_formed(k, &why)) throw DomainError("patched: key not in normal form: " + why);
        Ordinal h1 = k.height.succ();
        std::sort(vs.begin(), vs.end(), NodeLess{});
        for (std::size_t i = 0; i < vs.size(); ++i) {
            if (i && vs[i] == vs[i - 1]) throw DomainError("patched: repeated successor");
            if (vs[i].height != h1 || !(tr_.u_restrict(vs[i], k.height) == k))
                throw DomainError("patched: value is not an immediate successor of its key");
        }
    }
    return std::make_shared<const CoverRule>(CoverRule{PatchedCover{std::move(base), std::move(table)}});
}

WedgeEngine::Flat WedgeEngine::flatten(const CoverRule& f) const {
    Flat out;
    const CoverRule* cur = &f;
    while (true) {
        if (auto* p = std::get_if<PatchedCover>(&cur->rule)) {
            for (auto& kv : p->table) out.table.emplace(kv.first, kv.second); // outer patches win
            cur = p->base.get();
        } else if (auto* s = std::get_if<SubtreeCover>(&cur->rule)) {
            out.s = s->s.get();
            return out;
        } else {
            throw DomainError("cover over U expected, got a table cover");
        }
    }
}

const TableCover& WedgeEngine::table_of(const CoverRule& f) const {
    if (auto* t = std::get_if<TableCover>(&f.rule)) return *t;
    throw DomainError("explicit node given to a cover over U");
}

bool WedgeEngine::member(const Subtree& s, const UNode& x) const {
    switch (s.kind) {
    case Subtree::Kind::t_in_u: return tr_.u_in_T(x);
    case Subtree::Kind::truncated: return x.height < s.height && member(*s.base, x);
    case Subtree::Kind::safe: return is_safe(*s.cover, x);
    }
    return false;
}

namespace {

// every successor delta <= beta satisfies delta < h
bool successor_heights_below(const Ordinal& beta, const Ordinal& h) {
    if (beta.is_zero()) return true;
    return beta.is_successor() ? beta < h : beta <= h;
}

Ordinal largest_allowed(const Ordinal& h) {
    if (h.is_limit_or_zero()) return h;
    auto bd = block_decompose(h);
    return bd.limit_part + Ordinal::natural(Natural(bd.finite_part - 1));
}

} // namespace

// all successor-height restrictions of x (x itself included) lie in s
bool WedgeEngine::prefix_in(const Subtree& s, const UNode& x) const {
    switch (s.kind) {
    case Subtree::Kind::t_in_u:
        // U meets 2^{<omega_1} exactly in T, so it is enough that every digit is a bit
        return tr_.u_in_T(x);
    case Subtree::Kind::truncated: return successor_heights_below(x.height, s.height) && prefix_in(*s.base, x);
    case Subtree::Kind::safe: return is_safe(*s.cover, x);
    }
    return false;
}

std::vector<UNode> WedgeEngine::subtree_children(const Subtree& s, const UNode& x) const {
    switch (s.kind) {
    case Subtree::Kind::t_in_u:
        if (!tr_.u_in_T(x)) return {};
        return {tr_.u_append(x, 0), tr_.u_append(x, 1)};
    case Subtree::Kind::truncated:
        if (!(x.height.succ() < s.height)) return {};
        return subtree_children(*s.base, x);
    case Subtree::Kind::safe:
        if (!is_safe(*s.cover, x)) return {};
        return eval_cover(*s.cover, x);
    }
    return {};
}

std::vector<UNode> WedgeEngine::eval_cover(const CoverRule& f, const UNode& x) const {
    Flat fl = flatten(f);
    if (auto it = fl.table.find(x); it != fl.table.end()) return it->second;
    return subtree_children(*fl.s, x);
}

std::vector<ExplicitTree::Id> WedgeEngine::eval_cover(const TableCover& f, ExplicitTree::Id x) const {
    if (!f.tree->contains(x)) throw DomainError("eval_cover: node " + std::to_string(x) + " not in tree");
    auto it = f.f.find(x);
    return it == f.f.end() ? std::vector<ExplicitTree::Id>{} : it->second;
}

bool WedgeEngine::is_safe(const CoverRule& f, const CoverPoint& x) const {
    if (auto* u = std::get_if<UNode>(&x)) return is_safe(f, *u);
    return is_safe(table_of(f), std::get<ExplicitTree::Id>(x));
}

bool WedgeEngine::is_safe(const CoverRule& f, const UNode& x) const {
    Flat fl = flatten(f);
    // patched points below x: the branch of x must pass through the table value
    for (auto& [k, vs] : fl.table) {
        if (!(k.height < x.height) || tr_.compare(k, x) != TreeOrder::below) continue;
        UNode z = tr_.u_restrict(x, k.height.succ());
        if (std::find(vs.begin(), vs.end(), z) == vs.end()) return false;
    }
    // unpatched points y < x need x|(h(y)+1) in S; S is downward closed, so
    // only the largest such restriction matters, or all of them at a limit
    auto bd = block_decompose(x.height);
    std::size_t n = static_cast<std::size_t>(to_u64(bd.finite_part, "height"));
    for (std::size_t i = n; i >= 1; --i) {
        UNode prev = tr_.u_restrict(x, bd.limit_part + Ordinal(i - 1));
        if (!fl.table.count(prev)) return member(*fl.s, i == n ? x : tr_.u_restrict(x, bd.limit_part + Ordinal(i)));
    }
    if (bd.limit_part.is_zero()) return true;
    return prefix_in(*fl.s, n == 0 ? x : tr_.u_restrict(x, bd.limit_part));
}

bool WedgeEngine::is_safe(const TableCover& f, ExplicitTree::Id x) const {
    if (!f.tree->contains(x)) throw DomainError("is_safe: node " + std::to_string(x) + " not in tree");
    auto cur = x;
    while (auto p = f.tree->parent(cur)) {
        auto fs = eval_cover(f, *p);
        if (std::find(fs.begin(), fs.end(), cur) == fs.end()) return false;
        cur = *p;
    }
    return true;
}

std::vector<ExplicitTree::Id> WedgeEngine::safe_set(const TableCover& f) const {
    std::vector<ExplicitTree::Id> out;
    for (auto x : f.tree->nodes())
        if (is_safe(f, x)) out.push_back(x);
    return out;
}

// ---- existence of safe points

Ordinal WedgeEngine::t_meet(const TNode& a, const TNode& b) const {
    Ordinal h = std::min(a.height, b.height);
    TNode ra = tr_.t_restrict(a, h), rb = tr_.t_restrict(b, h);
    if (ra == rb) return h;
    std::vector<Ordinal> d;
    std::set_symmetric_difference(ra.flips.begin(), ra.flips.end(), rb.flips.begin(), rb.flips.end(),
                                  std::back_inserter(d));
    Ordinal first = d.empty() ? h : d.front();
    Ordinal g = gamma_of(h);
    for (std::size_t i = 0; i < ra.tail.size(); ++i)
        if (ra.tail[i] != rb.tail[i]) {
            first = std::min(first, g + Ordinal(i));
            break;
        }
    return first;
}

WedgeEngine::Desc WedgeEngine::prefix_desc(const Subtree& s) const {
    switch (s.kind) {
    case Subtree::Kind::t_in_u: return {};
    case Subtree::Kind::truncated: {
        Desc d = prefix_desc(*s.base);
        Ordinal top = largest_allowed(s.height);
        if (!d.bound || top < *d.bound) d.bound = top;
        return d;
    }
    case Subtree::Kind::safe: return safe_desc(*s.cover);
    }
    return {};
}

// Safe points of f: the T nodes of height <= bound missing every cone above a
// blocked node, plus some of the finitely many patch values.
WedgeEngine::Desc WedgeEngine::safe_desc(const CoverRule& f) const {
    Flat fl = flatten(f);
    Desc d = prefix_desc(*fl.s);
    for (auto& [k, vs] : fl.table) {
        for (auto& v : vs) d.extra.push_back(v);
        if (!tr_.u_in_T(k)) continue;
        for (int b = 0; b < 2; ++b) {
            UNode z = tr_.u_append(k, b);
            if (std::find(vs.begin(), vs.end(), z) == vs.end()) d.blocked.push_back(*tr_.u_to_T(z));
        }
    }
    return d;
}

// a node of T at level alpha above y outside every blocked cone
std::optional<TNode> WedgeEngine::avoid(const TNode& y, const std::vector<TNode>& blocked, const Ordinal& alpha) const {
    std::vector<const TNode*> above;
    for (auto& c : blocked) {
        auto o = tr_.compare(c, y);
        if (o == TreeOrder::below || o == TreeOrder::equal) return std::nullopt;
        if (o == TreeOrder::above) above.push_back(&c);
    }
    if (y.height == alpha) return y;
    if (above.empty()) return tr_.t_canonical_extension(y, alpha);
    Ordinal m = above[0]->height;
    for (auto* c : above) m = std::min(m, t_meet(*above[0], *c));
    if (y.height < m) {
        // everything blocked goes through one child; the other is free
        bool b = tr_.t_query(*above[0], y.height);
        return tr_.t_canonical_extension(tr_.t_append(y, !b), alpha);
    }
    for (bool b : {false, true})
        if (auto r = avoid(tr_.t_append(y, b), blocked, alpha)) return r;
    return std::nullopt;
}

SafeSearch WedgeEngine::find_safe_point(const CoverRule& f, const Ordinal& alpha, std::size_t budget) const {
    if (auto* t = std::get_if<TableCover>(&f.rule)) {
        auto lvl = alpha.as_natural();
        if (!lvl || *lvl >= t->tree->height()) return {};
        for (auto x : t->tree->level(static_cast<int>(to_u64(*lvl, "level"))))
            if (is_safe(*t, x)) return {x, true};
        return {};
    }
    if (alpha.is_zero()) return {tr_.u_root(), true};
    Desc d = safe_desc(f);
    std::size_t spent = 0;
    std::sort(d.extra.begin(), d.extra.end(), NodeLess{});
    d.extra.erase(std::unique(d.extra.begin(), d.extra.end()), d.extra.end());
    for (auto& e : d.extra) {
        if (e.height != alpha) continue;
        if (++spent > budget) return {std::nullopt, false};
        if (is_safe(f, e)) return {e, true};
    }
    if (d.bound && alpha > *d.bound) return {};
    std::vector<TNode> blocked;
    for (auto& c : d.blocked)
        if (c.height <= alpha) blocked.push_back(c);
    if (auto t = avoid(tr_.t_root(), blocked, alpha)) return {tr_.u_embed_T(*t), true};
    return {};
}

bool WedgeEngine::covers_within(const CoverRule& f, const Ordinal& alpha) const {
    auto r = find_safe_point(f, alpha);
    if (!r.decided) throw UndecidedError("covers_within: safe point search exhausted its budget");
    return !r.point.has_value();
}

} // namespace wb
