#include <algorithm>
#include <functional>
#include <set>

#include "wedgebench/aronszajn.hpp"
#include "wedgebench/coding.hpp"

namespace wb {

std::map<Ordinal, Natural> Trees::te_rebase(const TeNode& x, const Ordinal& beta) const {
    std::map<Ordinal, Natural> out;
    std::set<Ordinal> cand;
    for (auto& [k, v] : x.delta) cand.insert(k);
    for (auto& k : cs_->delta(x.height, beta)) cand.insert(k);
    for (auto& k : cand) {
        Natural v = te_query(x, k);
        if (v != cs_->eval(beta, k)) out.emplace(k, v);
    }
    return out;
}

TeNode Trees::te_node(const Ordinal& height, const std::map<Ordinal, Natural>& delta) const {
    TeNode r;
    r.height = height;
    std::set<Natural> used;
    for (auto& [k, v] : delta) {
        if (!(k < height)) throw DomainError("te_node: key " + k.str() + " not below " + height.str());
        if (v < 0) throw DomainError("te_node: negative value");
        if (!used.insert(v).second) throw DomainError("te_node: value " + v.str() + " repeated in delta");
        if (v != cs_->eval(height, k)) r.delta.emplace(k, v);
    }
    for (auto& [k, v] : r.delta) {
        if (v % 2 == 0) continue; // evens are never in the range of e
        std::optional<Ordinal> p;
        try {
            p = cs_->locate(height, v, range_budget_);
        } catch (const UndecidedError&) {
            throw UndecidedError("te_node: injectivity of value " + v.str() + " undecided within budget");
        }
        if (p && !delta.count(*p))
            throw DomainError("te_node: value " + v.str() + " collides with e_" + height.str() + "(" + p->str() + ")");
    }
    return r;
}

Natural Trees::te_query(const TeNode& x, const Ordinal& xi) const {
    if (!(xi < x.height)) throw DomainError("te_query: " + xi.str() + " outside height " + x.height.str());
    auto it = x.delta.find(xi);
    return it != x.delta.end() ? it->second : cs_->eval(x.height, xi);
}

TeNode Trees::te_restrict(const TeNode& x, const Ordinal& beta) const {
    if (beta > x.height) throw DomainError("restrict: " + beta.str() + " above height " + x.height.str());
    TeNode r;
    r.height = beta;
    std::set<Ordinal> cand;
    for (auto& [k, v] : x.delta)
        if (k < beta) cand.insert(k);
    for (auto& k : cs_->delta(beta, x.height)) cand.insert(k);
    for (auto& k : cand) {
        Natural v = te_query(x, k);
        if (v != cs_->eval(beta, k)) r.delta.emplace(k, v);
    }
    return r;
}

bool Trees::te_in_range(const TeNode& x, const Natural& v) const {
    for (auto& [k, w] : x.delta)
        if (w == v) return true;
    if (v % 2 == 0) return false;
    auto p = cs_->locate(x.height, v, range_budget_);
    return p && !x.delta.count(*p);
}

Stream<TeNode> Trees::te_successors(const TeNode& x, std::size_t budget) const {
    Stream<TeNode> out;
    Ordinal h1 = x.height.succ();
    auto base = te_rebase(x, h1);
    Natural stem = cs_->eval(h1, x.height);
    for (Natural v = 0; out.nodes.size() < budget; ++v) {
        if (te_in_range(x, v)) continue;
        TeNode y{h1, base};
        if (v != stem) y.delta.emplace(x.height, v);
        out.nodes.push_back(std::move(y));
    }
    out.truncated = true;
    return out;
}

TeNode Trees::te_canonical_extension(const TeNode& x, const Ordinal& alpha) const {
    if (alpha < x.height) throw DomainError("canonical_extension: target below height");
    if (alpha == x.height) return x;
    TeNode r{alpha, te_rebase(x, alpha)};
    // e_alpha on [height, alpha) may reuse a value that x moved; re-value those
    // points with the least unused evens
    std::set<Natural> used;
    for (auto& [k, v] : r.delta) used.insert(v);
    std::vector<Ordinal> clash;
    for (auto& [k, v] : r.delta) {
        auto p = cs_->locate(alpha, v, range_budget_);
        if (p && *p >= x.height) clash.push_back(*p);
    }
    std::sort(clash.begin(), clash.end());
    Natural even = 0;
    for (auto& p : clash) {
        while (used.count(even)) even += 2;
        r.delta.emplace(p, even);
        used.insert(even);
    }
    return r;
}

Stream<TeNode> Trees::te_level(const Ordinal& alpha, std::size_t budget) const {
    Stream<TeNode> out;
    out.truncated = true;
    if (alpha.is_zero()) {
        out.nodes.push_back(TeNode{});
        out.truncated = false;
        return out;
    }
    // deltas in order of weight sum(1 + code(xi) + value)
    const std::uint64_t max_weight = 64;
    for (std::uint64_t w = 0; w <= max_weight && out.nodes.size() < budget; ++w) {
        auto pos = positions_by_code(Ordinal(), alpha, w);
        std::vector<std::pair<Ordinal, std::uint64_t>> cost;
        for (auto& p : pos) cost.emplace_back(p, 1 + to_u64(godel_code(p), "code"));
        std::map<Ordinal, Natural> chosen;
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
            if (out.nodes.size() >= budget) return;
            if (left == 0) {
                try {
                    TeNode y = te_node(alpha, chosen);
                    if (y.delta.size() == chosen.size()) out.nodes.push_back(std::move(y));
                } catch (const DomainError&) {
                } catch (const UndecidedError&) {
                }
                return;
            }
            for (std::size_t j = i; j < cost.size(); ++j) {
                if (cost[j].second > left) continue;
                std::uint64_t v = left - cost[j].second;
                for (std::uint64_t val = 0; val <= v; ++val) {
                    chosen[cost[j].first] = val;
                    rec(j + 1, v - val);
                    chosen.erase(cost[j].first);
                    if (out.nodes.size() >= budget) return;
                }
            }
        };
        rec(0, w);
    }
    return out;
}

} // namespace wb
