#include <algorithm>
#include <functional>
#include <set>

#include "wedgebench/aronszajn.hpp"
#include "wedgebench/coding.hpp"

namespace wb {

namespace {

// Start of every component plus the total height; throws on malformed lists.
std::vector<Ordinal> comp_starts(const std::vector<UComp>& comps, Ordinal* height) {
    std::vector<Ordinal> starts;
    Ordinal p;
    for (const auto& c : comps) {
        starts.push_back(p);
        if (c.is_digit()) {
            if (c.digit < 0) throw DomainError("u_node: negative digit");
            p = p.succ();
            continue;
        }
        const TNode& t = *c.tail;
        if (!t.height.is_limit())
            throw DomainError("u_node: tail height " + t.height.str() + " is not a limit");
        if (!(p < t.height))
            throw DomainError("u_node: tail ending at " + t.height.str() + " starts at " + p.str());
        if (!t.tail.empty()) throw DomainError("u_node: tail node carries explicit bits");
        for (std::size_t i = 0; i < t.flips.size(); ++i)
            if (!(t.flips[i] < t.height) || (i > 0 && !(t.flips[i - 1] < t.flips[i])))
                throw DomainError("u_node: tail flips not sorted below the tail height");
        p = t.height;
    }
    if (height) *height = p;
    return starts;
}

bool is_bit(const Natural& d) { return d == 0 || d == 1; }

} // namespace

// Normal form of comps[0, count): the last tail absorbs every bit digit and
// tail back to the last non-bit digit, and records its flips against x_gamma
// only on that stretch. Trailing digits stay explicit.
std::vector<UComp> Trees::canon(const std::vector<UComp>& comps, std::size_t count,
                                const std::vector<Ordinal>& starts) const {
    if (count == 0) return {};
    std::size_t j = count;
    while (j > 0 && comps[j - 1].is_digit()) --j;
    if (j == 0) return std::vector<UComp>(comps.begin(), comps.begin() + static_cast<std::ptrdiff_t>(count));
    const Ordinal gamma = comps[j - 1].tail->height;
    std::ptrdiff_t r = static_cast<std::ptrdiff_t>(j) - 1;
    while (r >= 0 && (!comps[r].is_digit() || is_bit(comps[r].digit))) --r;
    std::size_t keep = static_cast<std::size_t>(r + 1);
    std::set<Ordinal> flips;
    for (std::size_t i = keep; i < j; ++i) {
        const Ordinal& p = starts[i];
        if (comps[i].is_digit()) {
            if ((comps[i].digit == 1) != x_bit(gamma, p)) flips.insert(p);
            continue;
        }
        const TNode& t = *comps[i].tail;
        std::vector<Ordinal> d;
        auto dx = delta_x(t.height, gamma);
        std::set_symmetric_difference(t.flips.begin(), t.flips.end(), dx.begin(), dx.end(), std::back_inserter(d));
        for (auto& e : d)
            if (p <= e) flips.insert(e);
    }
    auto out = canon(comps, keep, starts);
    out.push_back(UComp::make_tail(TNode{gamma, {flips.begin(), flips.end()}, {}}));
    out.insert(out.end(), comps.begin() + static_cast<std::ptrdiff_t>(j),
               comps.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
}

UNode Trees::u_node(const std::vector<UComp>& comps) const {
    Ordinal h;
    auto starts = comp_starts(comps, &h);
    return UNode{canon(comps, comps.size(), starts), h};
}

bool Trees::u_well_formed(const UNode& x, std::string* why) const {
    try {
        Ordinal h;
        auto starts = comp_starts(x.comps, &h);
        if (h != x.height) throw DomainError("stored height disagrees with components");
        if (canon(x.comps, x.comps.size(), starts) != x.comps) throw DomainError("not in normal form");
        return true;
    } catch (const DomainError& e) {
        if (why) *why = e.what();
        return false;
    }
}

Natural Trees::u_query(const UNode& x, const Ordinal& xi) const {
    if (!(xi < x.height)) throw DomainError("u_query: " + xi.str() + " outside height " + x.height.str());
    Ordinal p;
    for (const auto& c : x.comps) {
        if (c.is_digit()) {
            if (p == xi) return c.digit;
            p = p.succ();
        } else {
            if (xi < c.tail->height) return t_query(*c.tail, xi) ? 1 : 0;
            p = c.tail->height;
        }
    }
    throw DomainError("u_query: malformed node");
}

UNode Trees::u_append(const UNode& u, const Natural& digit) const {
    if (digit < 0) throw DomainError("u_append: negative digit");
    UNode r = u;
    r.comps.push_back(UComp::make_digit(digit));
    r.height = u.height.succ();
    return r;
}

UNode Trees::u_glue(const UNode& u, const TNode& t) const {
    if (!t.height.is_limit()) throw DomainError("u_glue: tail height is not a limit");
    if (!(u.height < t.height)) throw DomainError("u_glue: node height must be below the tail height");
    if (!t.tail.empty()) throw DomainError("u_glue: malformed tail node");
    auto comps = u.comps;
    comps.push_back(UComp::make_tail(t));
    return u_node(comps);
}

UNode Trees::u_embed_T(const TNode& t) const {
    Ordinal g = gamma_of(t.height);
    std::vector<UComp> comps;
    if (!g.is_zero()) comps.push_back(UComp::make_tail(TNode{g, t.flips, {}}));
    for (bool b : t.tail) comps.push_back(UComp::make_digit(b ? 1 : 0));
    return u_node(comps);
}

UNode Trees::u_restrict(const UNode& x, const Ordinal& beta) const {
    if (beta > x.height) throw DomainError("restrict: " + beta.str() + " above height " + x.height.str());
    if (beta == x.height) return x;
    std::vector<UComp> out;
    Ordinal p;
    for (const auto& c : x.comps) {
        if (!(p < beta)) break;
        if (c.is_digit()) {
            out.push_back(c);
            p = p.succ();
            continue;
        }
        const TNode& t = *c.tail;
        if (t.height <= beta) {
            out.push_back(c);
            p = t.height;
            continue;
        }
        // cut the tail [p, t.height) at beta
        Ordinal g = gamma_of(beta);
        Ordinal from = p;
        if (p < g) {
            out.push_back(UComp::make_tail(t_restrict(t, g)));
            from = g;
        }
        for (Ordinal e = from; e < beta; e = e.succ()) out.push_back(UComp::make_digit(t_query(t, e) ? 1 : 0));
        break;
    }
    return u_node(out);
}

Stream<UNode> Trees::u_successors(const UNode& x, std::size_t budget) const {
    Stream<UNode> s;
    for (std::size_t n = 0; n < budget; ++n) s.nodes.push_back(u_append(x, n));
    s.truncated = true;
    return s;
}

bool Trees::u_in_T(const UNode& x) const {
    for (const auto& c : x.comps)
        if (c.is_digit() && !is_bit(c.digit)) return false;
    return true;
}

std::optional<TNode> Trees::u_to_T(const UNode& x) const {
    if (!u_in_T(x)) return std::nullopt;
    TNode t;
    t.height = x.height;
    for (const auto& c : x.comps) {
        if (c.is_digit()) {
            t.tail.push_back(c.digit == 1);
        } else {
            // normal form: a bit-only node has at most one tail, and it comes first
            t.flips = c.tail->flips;
            t.tail.clear();
        }
    }
    return t;
}

std::vector<std::pair<Ordinal, Natural>> Trees::u_nonbit_digits(const UNode& x) const {
    std::vector<std::pair<Ordinal, Natural>> out;
    Ordinal p;
    for (const auto& c : x.comps) {
        if (c.is_digit()) {
            if (!is_bit(c.digit)) out.emplace_back(p, c.digit);
            p = p.succ();
        } else {
            p = c.tail->height;
        }
    }
    return out;
}

UNode Trees::u_canonical_extension(const UNode& x, const Ordinal& alpha) const {
    if (alpha < x.height) throw DomainError("canonical_extension: target below height");
    Ordinal g = gamma_of(alpha);
    UNode r = x;
    if (x.height < g) r = u_glue(x, x_alpha(g));
    while (r.height < alpha) r = u_append(r, 0);
    return r;
}

namespace {

struct Weighted {
    UNode node;
    std::uint64_t weight;
};

void digit_vectors(std::size_t m, std::uint64_t budget, std::vector<Natural>& cur,
                   std::vector<std::pair<std::vector<Natural>, std::uint64_t>>& out, std::uint64_t used) {
    if (cur.size() == m) {
        out.emplace_back(cur, used);
        return;
    }
    for (std::uint64_t d = 0; used + d <= budget; ++d) {
        cur.push_back(d);
        digit_vectors(m, budget, cur, out, used + d);
        cur.pop_back();
    }
}

} // namespace

// Canonical U nodes of height h with weight <= W. Weight: digit values, plus
// 1 + code for every tail flip and for every nonzero tail start.
static void u_generate(const Trees& tr, const Ordinal& h, std::uint64_t W, std::vector<Weighted>& out) {
    if (h.is_zero()) {
        out.push_back({UNode{}, 0});
        return;
    }
    auto bd = block_decompose(h);
    const Ordinal& g = bd.limit_part;
    std::size_t m = static_cast<std::size_t>(to_u64(bd.finite_part, "finite part"));
    std::vector<std::pair<std::vector<Natural>, std::uint64_t>> dvs;
    std::vector<Natural> cur;
    digit_vectors(m, W, cur, dvs, 0);
    for (auto& [ds, s] : dvs) {
        std::uint64_t rem = W - s;
        if (g.is_zero()) {
            UNode u;
            for (auto& d : ds) u = tr.u_append(u, d);
            out.push_back({u, s});
            continue;
        }
        std::vector<std::pair<Ordinal, std::uint64_t>> starts{{Ordinal(), 0}};
        for (auto& q : positions_by_code(Ordinal(1), g, rem))
            if (q.is_successor()) starts.emplace_back(q, 1 + to_u64(godel_code(q), "code"));
        for (auto& [q, qc] : starts) {
            if (qc > rem) continue;
            std::uint64_t rem2 = rem - qc;
            std::vector<std::pair<Ordinal, std::uint64_t>> fc;
            for (auto& e : positions_by_code(q, g, rem2)) fc.emplace_back(e, 1 + to_u64(godel_code(e), "code"));
            std::vector<Ordinal> chosen;
            std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t wf) {
                std::vector<Weighted> prefixes;
                if (q.is_zero()) {
                    prefixes.push_back({UNode{}, 0});
                } else {
                    std::vector<Weighted> all;
                    u_generate(tr, q, rem2 - wf, all);
                    for (auto& p : all) {
                        const auto& last = p.node.comps.back();
                        if (last.is_digit() && last.digit >= 2) prefixes.push_back(std::move(p));
                    }
                }
                auto flips = chosen;
                std::sort(flips.begin(), flips.end());
                for (auto& p : prefixes) {
                    UNode u = p.node;
                    u.comps.push_back(UComp::make_tail(TNode{g, flips, {}}));
                    u.height = g;
                    for (auto& d : ds) u = tr.u_append(u, d);
                    out.push_back({std::move(u), s + qc + wf + p.weight});
                }
                for (std::size_t j = i; j < fc.size(); ++j) {
                    if (wf + fc[j].second > rem2) continue;
                    chosen.push_back(fc[j].first);
                    rec(j + 1, wf + fc[j].second);
                    chosen.pop_back();
                }
            };
            rec(0, 0);
        }
    }
}

Stream<UNode> Trees::u_level(const Ordinal& alpha, std::size_t budget) const {
    Stream<UNode> s;
    if (alpha.is_zero()) {
        s.nodes.push_back(UNode{});
        return s;
    }
    std::vector<Weighted> got;
    const std::uint64_t max_weight = 40;
    for (std::uint64_t W = 0; W <= max_weight; ++W) {
        got.clear();
        u_generate(*this, alpha, W, got);
        if (got.size() >= budget) break;
    }
    std::sort(got.begin(), got.end(), [](const Weighted& a, const Weighted& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        return node_less(a.node, b.node);
    });
    for (std::size_t i = 0; i < got.size() && i < budget; ++i) s.nodes.push_back(got[i].node);
    s.truncated = true;
    return s;
}

} // namespace wb
