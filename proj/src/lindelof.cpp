#include "wedgebench/lindelof.hpp"

#include <algorithm>
#include <map>

namespace wb {

namespace {

using Id = ExplicitTree::Id;

std::vector<std::vector<std::size_t>> small_subsets(std::size_t n, std::size_t max_set) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask >> i & 1) s.push_back(i);
        if (s.size() <= max_set) out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.size() < b.size(); });
    return out;
}

std::string tree_name(const ExplicitTree& t) {
    return "explicit(" + std::to_string(t.size()) + " nodes, height " + std::to_string(t.height()) + ")";
}

} // namespace

LindelofReport lindelof_enumerate(const WedgeEngine& eng, const ExplicitTree& t, std::size_t max_set, int cutoff,
                                  const Natural& bound) {
    LindelofReport rep;
    rep.tree = tree_name(t);
    rep.method = "enumeration";
    rep.cutoff = cutoff;
    rep.max_set = max_set;
    rep.checks_engine = true;

    const auto& nodes = t.nodes();
    std::map<Id, std::size_t> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = i;
    std::vector<std::size_t> internal;
    std::vector<std::vector<std::vector<std::size_t>>> options(nodes.size());
    Natural total = 1;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const auto& ch = t.children(nodes[i]);
        if (ch.empty()) continue;
        internal.push_back(i);
        options[i] = small_subsets(ch.size(), max_set);
        total *= options[i].size();
    }
    rep.expected_covers = total;
    if (total > bound) throw DomainError("lindelof_enumerate: " + total.str() + " covers exceed the bound " + bound.str());

    // path[x] = (y, z) for each y < x, z the successor of y below or at x
    std::vector<std::vector<std::pair<std::size_t, Id>>> path(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Id cur = nodes[i];
        while (auto p = t.parent(cur)) {
            path[i].emplace_back(idx[*p], cur);
            cur = *p;
        }
    }
    const int H = t.height();
    const int top = std::min(cutoff, H);

    auto tree_ptr = std::make_shared<const ExplicitTree>(t);
    std::vector<std::size_t> choice(nodes.size(), 0);
    std::vector<std::vector<Id>> f(nodes.size());
    std::vector<char> safe(nodes.size());
    while (true) {
        TableCover tc{tree_ptr, {}};
        for (auto i : internal) {
            f[i].clear();
            for (auto c : options[i][choice[i]]) f[i].push_back(t.children(nodes[i])[c]);
            if (!f[i].empty()) tc.f[nodes[i]] = f[i];
        }
        auto in = [&](std::size_t y, Id z) { return std::find(f[y].begin(), f[y].end(), z) != f[y].end(); };
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            bool s = true;
            for (auto& [y, z] : path[i])
                if (!in(y, z)) s = false;
            safe[i] = s;
            if (eng.is_safe(tc, nodes[i]) != s) ++rep.engine_mismatches;
        }
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (!safe[i]) continue;
            if (auto p = t.parent(nodes[i]); p && !safe[idx[*p]]) ++rep.closure_failures;
            for (auto c : t.children(nodes[i]))
                if (static_cast<bool>(safe[idx[c]]) != in(i, c)) ++rep.successor_failures;
        }
        bool bad = false, any_p3 = false;
        int first_ns = -1;
        for (int a = 0; a <= top; ++a) {
            bool ns = true, p3 = true, p2 = true;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                int d = t.depth(nodes[i]);
                // x is covered by some y below it with h(y) < a
                bool cov = false;
                for (auto& [y, z] : path[i])
                    if (t.depth(nodes[y]) < a && !in(y, z)) cov = true;
                if (d == a) {
                    if (safe[i]) ns = false;
                    if (!cov) p3 = false;
                }
                if (d >= a && !cov) p2 = false;
            }
            if (ns != p3 || p3 != p2) bad = true;
            any_p3 = any_p3 || p3;
            if (ns && first_ns < 0) first_ns = a;
        }
        rep.first_unsafe_level[first_ns] += 1;
        // the only limit level of a finite tree is 0, and nothing lies below it
        bool any_limit_p2 = t.size() == 0;
        if (any_p3 != any_limit_p2) ++rep.limit_divergences;
        if (bad) {
            ++rep.counterexamples;
            if (rep.witnesses.size() < 5) {
                std::string w;
                for (auto& [x, ys] : tc.f) {
                    w += std::to_string(x) + "=>{";
                    for (std::size_t j = 0; j < ys.size(); ++j) w += (j ? "," : "") + std::to_string(ys[j]);
                    w += "};";
                }
                rep.witnesses.push_back(w);
            }
        }
        ++rep.covers;
        std::size_t k = 0;
        while (k < internal.size() && ++choice[internal[k]] == options[internal[k]].size()) choice[internal[k++]] = 0;
        if (k == internal.size()) break;
    }
    return rep;
}

namespace {

constexpr std::uint8_t kInf = 255;

// per level from the subtree root down: (some node safe, max over nodes of t)
// where t(x) is 1 + the least height of a y < x whose wedge holds x, or kInf
using Sig = std::vector<std::uint8_t>;
using Dist = std::map<Sig, Natural>;

struct Ctx {
    bool safe;
    std::uint8_t t;
    auto operator<=>(const Ctx&) const = default;
};

} // namespace

LindelofReport lindelof_count(int arity, int levels, std::size_t max_set, int cutoff) {
    if (arity < 1 || levels < 1 || levels > 40) throw DomainError("lindelof_count: bad tree shape");
    LindelofReport rep;
    rep.tree = "complete(" + std::to_string(arity) + "-ary, height " + std::to_string(levels) + ")";
    rep.method = "counting";
    rep.cutoff = cutoff;
    rep.max_set = max_set;
    const auto opts = small_subsets(static_cast<std::size_t>(arity), max_set);
    Natural internal = 0, width = 1;
    for (int d = 0; d + 1 < levels; ++d) {
        internal += width;
        width *= arity;
    }
    rep.expected_covers = boost::multiprecision::pow(Natural(opts.size()), static_cast<unsigned>(internal));

    auto contexts = [&](int d) {
        std::vector<Ctx> cs;
        for (int s = 0; s < 2; ++s) {
            cs.push_back({s == 1, kInf});
            for (int t = 1; t <= d; ++t) cs.push_back({s == 1, static_cast<std::uint8_t>(t)});
        }
        return cs;
    };
    std::map<Ctx, Dist> below;
    for (auto c : contexts(levels - 1)) below[c] = Dist{{Sig{c.safe, c.t}, Natural(1)}};
    for (int d = levels - 2; d >= 0; --d) {
        std::map<Ctx, Dist> here;
        const std::size_t rest = static_cast<std::size_t>(levels - 1 - d) * 2;
        for (auto c : contexts(d)) {
            Dist out;
            for (auto& a : opts) {
                Dist part{{Sig(rest, 0), Natural(1)}};
                for (int i = 0; i < arity; ++i) {
                    bool chosen = std::find(a.begin(), a.end(), static_cast<std::size_t>(i)) != a.end();
                    Ctx ci{c.safe && chosen, chosen ? c.t : std::min<std::uint8_t>(c.t, static_cast<std::uint8_t>(d + 1))};
                    Dist next;
                    for (auto& [p, n1] : part)
                        for (auto& [q, n2] : below.at(ci)) {
                            Sig r(rest);
                            for (std::size_t j = 0; j < rest; j += 2) {
                                r[j] = p[j] | q[j];
                                r[j + 1] = std::max(p[j + 1], q[j + 1]);
                            }
                            next[r] += n1 * n2;
                        }
                    part = std::move(next);
                }
                for (auto& [p, n] : part) {
                    Sig s{c.safe, c.t};
                    s.insert(s.end(), p.begin(), p.end());
                    out[s] += n;
                }
            }
            here[c] = std::move(out);
        }
        below = std::move(here);
    }
    const int top = std::min(cutoff, levels);
    for (auto& [s, n] : below.at(Ctx{true, kInf})) {
        rep.covers += n;
        bool bad = false, any_p3 = false;
        int first_ns = -1;
        for (int a = 0; a <= top; ++a) {
            bool ns = a == levels || !s[2 * a];
            bool p3 = a == levels || s[2 * a + 1] != kInf;
            bool p2 = true;
            for (int j = a; j < levels; ++j)
                if (s[2 * j + 1] > a) p2 = false;
            if (ns != p3 || p3 != p2) bad = true;
            any_p3 = any_p3 || p3;
            if (ns && first_ns < 0) first_ns = a;
        }
        rep.first_unsafe_level[first_ns] += n;
        if (any_p3) rep.limit_divergences += n;
        if (bad) {
            rep.counterexamples += n;
            if (rep.witnesses.size() < 5) {
                std::string w = "outcome";
                for (std::size_t j = 0; j < s.size(); j += 2)
                    w += " [" + std::to_string(s[j]) + "," + (s[j + 1] == kInf ? std::string("inf") : std::to_string(s[j + 1])) + "]";
                rep.witnesses.push_back(w);
            }
        }
    }
    return rep;
}

} // namespace wb
