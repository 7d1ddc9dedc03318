#include "wedgebench/coherent.hpp"

#include <algorithm>
#include <set>

#include "wedgebench/coding.hpp"

namespace wb {

const char* to_string(RangeAnswer r) {
    switch (r) {
    case RangeAnswer::in: return "in";
    case RangeAnswer::out: return "out";
    case RangeAnswer::undecided: return "undecided";
    }
    return "?";
}

Natural successor_token(const Natural& k) { return 4 * k + 1; }

Natural displacement_token(const Ordinal& beta) {
    std::string s = "0";
    append_ordinal_bits(beta, s);
    return 4 * bits_to_numeral(s) + 3;
}

Natural block_correction_token(const Ordinal& lambda, const Natural& n, const Natural& i) {
    std::string s = "1";
    append_ordinal_bits(lambda, s);
    append_gamma(n + 1, s);
    append_gamma(i + 1, s);
    return 4 * bits_to_numeral(s) + 3;
}

Token decode_token(const Natural& v) {
    Token t;
    if (v < 0 || v % 2 == 0) return t;
    if (v % 4 == 1) {
        t.kind = Token::Kind::successor;
        t.k = (v - 1) / 4;
        return t;
    }
    std::string s = numeral_to_bits((v - 3) / 4);
    if (s.empty()) return t;
    std::size_t pos = 1;
    auto o = read_ordinal_bits(s, pos);
    if (!o) return t;
    if (s[0] == '0') {
        if (pos != s.size()) return t;
        t.kind = Token::Kind::displacement;
        t.ord = *o;
        return t;
    }
    auto n1 = read_gamma(s, pos);
    if (!n1) return t;
    auto i1 = read_gamma(s, pos);
    if (!i1 || pos != s.size()) return t;
    t.kind = Token::Kind::block_correction;
    t.ord = *o;
    t.block = *n1 - 1;
    t.index = *i1 - 1;
    return t;
}

// The chase of alpha: peel the finite part (a run of successor steps), jump to
// the first rung of the limit part, repeat until 0.
bool CoherentSystem::in_chase(const Ordinal& alpha, const Ordinal& nu) const {
    if (nu.is_natural()) return false;
    Ordinal cur = alpha;
    while (!cur.is_zero()) {
        if (!(nu < cur)) return false;
        auto bd = block_decompose(cur);
        if (bd.limit_part.is_zero()) return false;
        if (!(nu < bd.limit_part)) return true;
        cur = fund_seq(bd.limit_part, 0);
    }
    return false;
}

std::vector<Ordinal> CoherentSystem::chase_set(const Ordinal& alpha) const {
    std::vector<Ordinal> out;
    Ordinal cur = alpha;
    while (!cur.is_zero()) {
        auto bd = block_decompose(cur);
        if (bd.limit_part.is_zero()) break;
        for (Natural j = 0; j < bd.finite_part; ++j) out.push_back(bd.limit_part + Ordinal::natural(j));
        cur = fund_seq(bd.limit_part, 0);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Natural CoherentSystem::eval(const Ordinal& alpha, const Ordinal& xi) const {
    if (!(xi < alpha)) throw DomainError("eval_e: " + xi.str() + " is not below " + alpha.str());
    return eval_impl(alpha, xi, nullptr);
}

Natural CoherentSystem::eval_impl(const Ordinal& alpha, const Ordinal& xi, Budget* b) const {
    if (auto k = xi.as_natural()) {
        if (b) b->tick();
        auto nu = nonnatural_with_code(*k);
        if (nu && *nu < alpha && in_chase(alpha, *nu)) return displacement_token(*nu);
        return successor_token(*k);
    }
    Ordinal cur = alpha;
    for (;;) {
        if (b) b->tick();
        auto bd = block_decompose(cur);
        const Ordinal& gamma = bd.limit_part;
        if (!(xi < gamma)) return successor_token(godel_code(xi));
        Natural n = ladder_index(gamma, xi);
        if (n >= 1) {
            auto k = corrections_impl(gamma, n, b);
            auto it = std::lower_bound(k.begin(), k.end(), xi);
            if (it != k.end() && *it == xi)
                return block_correction_token(gamma, n, Natural(it - k.begin()));
        }
        cur = fund_seq(gamma, n);
    }
}

std::vector<Ordinal> CoherentSystem::corrections(const Ordinal& lambda, const Natural& n) const {
    return corrections_impl(lambda, n, nullptr);
}

std::vector<Ordinal> CoherentSystem::corrections_impl(const Ordinal& lambda, const Natural& n,
                                                      Budget* b) const {
    if (!lambda.is_limit()) throw DomainError("corrections: " + lambda.str() + " is not a limit");
    if (n == 0 || lambda == Ordinal::omega()) return {};
    auto key = std::make_pair(lambda, n);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = corr_memo_.find(key);
        if (it != corr_memo_.end()) return it->second;
    }
    Ordinal hi = fund_seq(lambda, n);
    Ordinal lo = fund_seq(lambda, n - 1);
    std::vector<Ordinal> out;
    for (const auto& nu : chase_set(hi)) {
        if (nu < lo) continue;
        if (eval_impl(hi, nu, b) == successor_token(godel_code(nu))) out.push_back(nu);
    }
    std::lock_guard<std::mutex> lk(mu_);
    return corr_memo_.emplace(key, std::move(out)).first->second;
}

std::vector<Ordinal> CoherentSystem::delta(const Ordinal& alpha, const Ordinal& beta) const {
    if (alpha > beta) throw DomainError("delta_e: " + alpha.str() + " exceeds " + beta.str());
    if (alpha == beta) return {};
    auto key = std::make_pair(alpha, beta);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = delta_memo_.find(key);
        if (it != delta_memo_.end()) return it->second;
    }
    auto out = delta_impl(alpha, beta);
    std::lock_guard<std::mutex> lk(mu_);
    return delta_memo_.emplace(key, std::move(out)).first->second;
}

// Candidate superset from the stage structure, then an exact pointwise filter.
std::vector<Ordinal> CoherentSystem::delta_impl(const Ordinal& alpha, const Ordinal& beta) const {
    std::set<Ordinal> cand;
    auto bd = block_decompose(beta);
    const Ordinal& gamma = bd.limit_part;
    if (bd.finite_part > 0) {
        Ordinal lo = gamma;
        if (alpha <= gamma) {
            for (auto& x : delta(alpha, gamma)) cand.insert(x);
        } else {
            lo = alpha;
        }
        if (!gamma.is_zero()) {
            for (Ordinal nu = lo; nu < beta; nu = nu.succ()) {
                Ordinal slot = Ordinal::natural(godel_code(nu));
                if (slot < alpha) cand.insert(slot);
            }
        }
    } else {
        Natural n = ladder_index(beta, alpha);
        Ordinal prev;
        for (Natural j = 0; j < n; ++j) {
            Ordinal rung = fund_seq(beta, j);
            for (auto& x : delta(rung, alpha))
                if (x >= prev) cand.insert(x);
            for (auto& x : corrections(beta, j)) cand.insert(x);
            prev = rung;
        }
        Ordinal rung = fund_seq(beta, n);
        for (auto& x : delta(alpha, rung))
            if (x >= prev) cand.insert(x);
        for (auto& x : corrections(beta, n))
            if (x < alpha) cand.insert(x);
    }
    std::vector<Ordinal> out;
    for (const auto& x : cand) {
        if (!(x < alpha)) continue;
        if (eval_impl(alpha, x, nullptr) != eval_impl(beta, x, nullptr)) out.push_back(x);
    }
    return out;
}

std::optional<Ordinal> CoherentSystem::locate(const Ordinal& alpha, const Natural& v,
                                              std::uint64_t budget) const {
    Budget b{budget};
    Token t = decode_token(v);
    std::vector<Ordinal> slots;
    switch (t.kind) {
    case Token::Kind::invalid: return std::nullopt;
    case Token::Kind::successor:
        slots.push_back(Ordinal::natural(t.k));
        if (auto nu = nonnatural_with_code(t.k)) slots.push_back(*nu);
        break;
    case Token::Kind::displacement:
        if (t.ord.is_natural()) return std::nullopt;
        slots.push_back(Ordinal::natural(godel_code(t.ord)));
        break;
    case Token::Kind::block_correction: {
        // tokens minted at lambda only exist from stage lambda on
        if (!t.ord.is_limit() || t.block == 0 || t.ord > alpha) return std::nullopt;
        auto k = corrections_impl(t.ord, t.block, &b);
        if (t.index >= k.size()) return std::nullopt;
        slots.push_back(k[static_cast<std::size_t>(t.index)]);
        break;
    }
    }
    for (const auto& p : slots) {
        if (!(p < alpha)) continue;
        if (eval_impl(alpha, p, &b) == v) return p;
    }
    return std::nullopt;
}

RangeAnswer CoherentSystem::range_test(const Ordinal& alpha, const Natural& v,
                                       std::uint64_t budget) const {
    if (v < 0 || v % 2 == 0) return RangeAnswer::out;
    try {
        return locate(alpha, v, budget) ? RangeAnswer::in : RangeAnswer::out;
    } catch (const UndecidedError&) {
        return RangeAnswer::undecided;
    }
}

std::size_t CoherentSystem::memo_entries() const {
    std::lock_guard<std::mutex> lk(mu_);
    return corr_memo_.size() + delta_memo_.size();
}

} // namespace wb
