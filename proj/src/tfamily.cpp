#include <algorithm>
#include <functional>
#include <set>

#include "wedgebench/aronszajn.hpp"
#include "wedgebench/coding.hpp"

namespace wb {

Trees::Trees(std::shared_ptr<const CoherentSystem> cs, std::uint64_t range_budget)
    : cs_(std::move(cs)), range_budget_(range_budget) {
    if (!cs_) throw DomainError("Trees: null coherent system");
}

Trees::Trees() : Trees(std::make_shared<CoherentSystem>()) {}

std::vector<Ordinal> positions_by_code(const Ordinal& lo, const Ordinal& hi, std::uint64_t limit) {
    std::vector<Ordinal> out;
    for (std::uint64_t c = 0; c < limit; ++c) {
        Ordinal n(c);
        if (lo <= n && n < hi) out.push_back(n);
        if (auto nu = nonnatural_with_code(c); nu && lo <= *nu && *nu < hi) out.push_back(*nu);
    }
    return out;
}

namespace {

void require_gamma(const Ordinal& a, const char* what) {
    if (!a.is_limit_or_zero()) throw DomainError(std::string(what) + ": " + a.str() + " is not limit-or-zero");
}

std::size_t finite_len(const Natural& n) { return static_cast<std::size_t>(to_u64(n, "finite offset")); }

std::vector<Ordinal> sym_diff(const std::vector<Ordinal>& a, const std::vector<Ordinal>& b) {
    std::vector<Ordinal> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

bool Trees::x_bit(const Ordinal& gamma, const Ordinal& eta) const {
    auto [xi, n] = unpair_f(eta);
    return cs_->eval(gamma, xi) == n;
}

TNode Trees::x_alpha(const Ordinal& alpha) const {
    require_gamma(alpha, "x_alpha");
    return TNode{alpha, {}, {}};
}

std::vector<Ordinal> Trees::delta_x_candidates(const Ordinal& alpha, const Ordinal& beta) const {
    require_gamma(alpha, "delta_x");
    require_gamma(beta, "delta_x");
    if (alpha > beta) throw DomainError("delta_x: " + alpha.str() + " exceeds " + beta.str());
    std::set<Ordinal> c;
    for (const auto& xi : cs_->delta(alpha, beta)) {
        c.insert(pair_f(xi, cs_->eval(alpha, xi)));
        c.insert(pair_f(xi, cs_->eval(beta, xi)));
    }
    return {c.begin(), c.end()};
}

std::vector<Ordinal> Trees::delta_x(const Ordinal& alpha, const Ordinal& beta) const {
    std::vector<Ordinal> out;
    for (const auto& eta : delta_x_candidates(alpha, beta))
        if (eta < alpha && x_bit(alpha, eta) != x_bit(beta, eta)) out.push_back(eta);
    return out;
}

TNode Trees::t_node(const Ordinal& height, std::vector<Ordinal> flips, std::vector<bool> tail) const {
    auto bd = block_decompose(height);
    if (Natural(tail.size()) != bd.finite_part)
        throw DomainError("t_node: tail has " + std::to_string(tail.size()) + " bits, height needs " +
                          bd.finite_part.str());
    std::sort(flips.begin(), flips.end());
    flips.erase(std::unique(flips.begin(), flips.end()), flips.end());
    for (const auto& f : flips)
        if (!(f < bd.limit_part))
            throw DomainError("t_node: flip " + f.str() + " is not below " + bd.limit_part.str());
    return TNode{height, std::move(flips), std::move(tail)};
}

bool Trees::t_query(const TNode& x, const Ordinal& eta) const {
    if (!(eta < x.height)) throw DomainError("t_query: " + eta.str() + " outside height " + x.height.str());
    Ordinal g = gamma_of(x.height);
    if (eta < g) return x_bit(g, eta) != std::binary_search(x.flips.begin(), x.flips.end(), eta);
    return x.tail[finite_len(eta.minus_left(g).finite_part())];
}

TNode Trees::t_restrict(const TNode& x, const Ordinal& beta) const {
    if (beta > x.height) throw DomainError("restrict: " + beta.str() + " above height " + x.height.str());
    Ordinal g = gamma_of(x.height);
    auto bd = block_decompose(beta);
    const Ordinal& g2 = bd.limit_part;
    std::size_t m = finite_len(bd.finite_part);
    if (g2 == g) {
        return TNode{beta, x.flips, std::vector<bool>(x.tail.begin(), x.tail.begin() + static_cast<std::ptrdiff_t>(m))};
    }
    std::vector<Ordinal> low;
    for (const auto& f : x.flips)
        if (f < g2) low.push_back(f);
    TNode r{beta, sym_diff(low, delta_x(g2, g)), {}};
    for (std::size_t i = 0; i < m; ++i) r.tail.push_back(t_query(x, g2 + Ordinal(i)));
    return r;
}

TNode Trees::t_append(const TNode& x, bool bit) const {
    TNode r = x;
    r.height = x.height.succ();
    r.tail.push_back(bit);
    return r;
}

Stream<TNode> Trees::t_successors(const TNode& x) const {
    return Stream<TNode>{{t_append(x, false), t_append(x, true)}, false};
}

Stream<TNode> Trees::t_level(const Ordinal& alpha, std::size_t budget) const {
    Stream<TNode> out;
    auto bd = block_decompose(alpha);
    const Ordinal& g = bd.limit_part;
    std::size_t m = finite_len(bd.finite_part);
    auto emit_tails = [&](const std::vector<Ordinal>& flips) {
        if (m >= 63) {
            out.truncated = true;
        }
        std::uint64_t count = m >= 63 ? ~0ULL : (1ULL << m);
        for (std::uint64_t bits = 0; bits < count; ++bits) {
            if (out.nodes.size() >= budget) {
                out.truncated = true;
                return false;
            }
            std::vector<bool> tail(m);
            for (std::size_t i = 0; i < m; ++i) tail[i] = (bits >> (m - 1 - i)) & 1;
            out.nodes.push_back(TNode{alpha, flips, tail});
        }
        return true;
    };
    if (g.is_zero()) {
        emit_tails({});
        return out;
    }
    // flip sets in order of weight sum(1 + code), each followed by all tails
    for (std::uint64_t w = 0;; ++w) {
        auto pos = positions_by_code(Ordinal(), g, w);
        std::vector<std::pair<Ordinal, std::uint64_t>> cost;
        for (auto& p : pos) cost.emplace_back(p, 1 + to_u64(godel_code(p), "code"));
        std::vector<Ordinal> chosen;
        bool go = true;
        std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t left) {
            if (!go) return;
            if (left == 0) {
                auto f = chosen;
                std::sort(f.begin(), f.end());
                go = emit_tails(f);
                return;
            }
            for (std::size_t j = i; j < cost.size() && go; ++j) {
                if (cost[j].second > left) continue;
                chosen.push_back(cost[j].first);
                rec(j + 1, left - cost[j].second);
                chosen.pop_back();
            }
        };
        rec(0, w);
        if (!go) break;
    }
    out.truncated = true;
    return out;
}

TNode Trees::t_canonical_extension(const TNode& x, const Ordinal& alpha) const {
    if (alpha < x.height) throw DomainError("canonical_extension: target below height");
    auto bd = block_decompose(alpha);
    const Ordinal& ga = bd.limit_part;
    Ordinal gx = gamma_of(x.height);
    TNode r;
    if (ga <= x.height) {
        r = x;
        r.height = alpha;
        while (Ordinal(gx) + Ordinal(r.tail.size()) < alpha) r.tail.push_back(false);
        return r;
    }
    std::vector<Ordinal> flips = sym_diff(x.flips, delta_x(gx, ga));
    for (std::size_t i = 0; i < x.tail.size(); ++i) {
        Ordinal eta = gx + Ordinal(i);
        if (x.tail[i] != x_bit(ga, eta)) flips.push_back(eta);
    }
    std::sort(flips.begin(), flips.end());
    r.height = alpha;
    r.flips = std::move(flips);
    r.tail.assign(finite_len(bd.finite_part), false);
    return r;
}

bool Trees::foreign_query(const ForeignBits& y, const Ordinal& eta) const {
    if (!(eta < y.height)) throw DomainError("foreign_query: point outside height");
    bool b = x_bit(y.anchor, eta) != y.complement;
    return b != (std::find(y.flips.begin(), y.flips.end(), eta) != y.flips.end());
}

std::optional<TNode> Trees::t_from_foreign(const ForeignBits& y) const {
    require_gamma(y.anchor, "foreign anchor");
    if (y.height > y.anchor) throw DomainError("foreign node: height exceeds anchor");
    for (auto& f : y.flips)
        if (!(f < y.height)) throw DomainError("foreign node: flip outside height");
    auto bd = block_decompose(y.height);
    const Ordinal& g = bd.limit_part;
    // complementing x_anchor below an infinite gamma differs from x_gamma on
    // all but finitely many points
    if (y.complement && !g.is_zero()) return std::nullopt;
    std::vector<Ordinal> f;
    for (auto& p : y.flips)
        if (p < g) f.push_back(p);
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    TNode r{y.height, g.is_zero() ? std::vector<Ordinal>{} : sym_diff(f, delta_x(g, y.anchor)), {}};
    for (std::size_t i = 0; i < finite_len(bd.finite_part); ++i) r.tail.push_back(foreign_query(y, g + Ordinal(i)));
    return r;
}

bool Trees::t_contains(const ForeignBits& y) const { return t_from_foreign(y).has_value(); }

} // namespace wb
