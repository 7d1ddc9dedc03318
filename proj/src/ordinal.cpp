#include "wedgebench/ordinal.hpp"

#include <cctype>

namespace wb {

std::string to_string(const Natural& n) { return n.str(); }

std::uint64_t to_u64(const Natural& n, const char* what) {
    if (n < 0 || n > Natural(std::numeric_limits<std::uint64_t>::max()))
        throw DomainError(std::string(what) + " does not fit in 64 bits");
    return static_cast<std::uint64_t>(n);
}

Ordinal::Ordinal(unsigned long long n) {
    if (n != 0) terms_.push_back(Term{Ordinal(), Natural(n)});
}

Ordinal Ordinal::natural(const Natural& n) {
    if (n < 0) throw DomainError("negative natural");
    Ordinal r;
    if (n != 0) r.terms_.push_back(Term{Ordinal(), n});
    return r;
}

Ordinal Ordinal::omega() { return omega_power(Ordinal(1ULL)); }

Ordinal Ordinal::omega_power(Ordinal exponent, Natural coeff) {
    if (coeff <= 0) throw DomainError("coefficient must be positive");
    Ordinal r;
    r.terms_.push_back(Term{std::move(exponent), std::move(coeff)});
    return r;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (terms[i].coeff <= 0) throw DomainError("coefficient must be positive");
        if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent))
            throw DomainError("exponents must be strictly descending");
    }
    Ordinal r;
    r.terms_ = std::move(terms);
    return r;
}

OrdinalKind Ordinal::kind() const {
    if (terms_.empty()) return OrdinalKind::zero;
    return terms_.back().exponent.is_zero() ? OrdinalKind::successor : OrdinalKind::limit;
}

bool Ordinal::is_natural() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

std::optional<Natural> Ordinal::as_natural() const {
    if (terms_.empty()) return Natural(0);
    if (!is_natural()) return std::nullopt;
    return terms_[0].coeff;
}

Natural Ordinal::finite_part() const {
    if (!terms_.empty() && terms_.back().exponent.is_zero()) return terms_.back().coeff;
    return 0;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const auto& x = a.terms_;
    const auto& y = b.terms_;
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto c = x[i].exponent <=> y[i].exponent;
        if (c != 0) return c;
        if (x[i].coeff != y[i].coeff)
            return x[i].coeff < y[i].coeff ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

Ordinal Ordinal::operator+(const Ordinal& rhs) const {
    if (rhs.is_zero()) return *this;
    const Ordinal& lead = rhs.terms_[0].exponent;
    Ordinal r;
    for (const auto& t : terms_) {
        auto c = t.exponent <=> lead;
        if (c > 0) {
            r.terms_.push_back(t);
        } else {
            if (c == 0) {
                r.terms_.push_back(Term{t.exponent, t.coeff + rhs.terms_[0].coeff});
                r.terms_.insert(r.terms_.end(), rhs.terms_.begin() + 1, rhs.terms_.end());
                return r;
            }
            break;
        }
    }
    r.terms_.insert(r.terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
    return r;
}

Ordinal Ordinal::operator+(unsigned long long n) const { return *this + Ordinal(n); }

Ordinal Ordinal::minus_left(const Ordinal& rhs) const {
    if (rhs > *this) throw DomainError("minus_left: subtrahend exceeds ordinal");
    const auto& x = terms_;
    const auto& y = rhs.terms_;
    std::size_t i = 0;
    while (i < y.size() && i < x.size() && x[i] == y[i]) ++i;
    Ordinal r;
    if (i == y.size()) {
        r.terms_.assign(x.begin() + i, x.end());
        return r;
    }
    // rhs diverges below *this at term i
    if (x[i].exponent == y[i].exponent) {
        r.terms_.push_back(Term{x[i].exponent, x[i].coeff - y[i].coeff});
        r.terms_.insert(r.terms_.end(), x.begin() + i + 1, x.end());
    } else {
        r.terms_.assign(x.begin() + i, x.end());
    }
    return r;
}

namespace {

void print_ord(const Ordinal& a, std::string& out) {
    if (a.is_zero()) {
        out += '0';
        return;
    }
    bool first = true;
    for (const auto& t : a.terms()) {
        if (!first) out += '+';
        first = false;
        if (t.exponent.is_zero()) {
            out += t.coeff.str();
            continue;
        }
        out += 'w';
        if (t.exponent != Ordinal(1ULL)) {
            out += '^';
            if (t.exponent.is_natural()) {
                out += t.exponent.as_natural()->str();
            } else {
                out += '(';
                print_ord(t.exponent, out);
                out += ')';
            }
        }
        if (t.coeff != 1) {
            out += '*';
            out += t.coeff.str();
        }
    }
}

struct CnfParser {
    std::string_view s;
    std::size_t pos;

    void ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool peek(char c) {
        ws();
        return pos < s.size() && s[pos] == c;
    }
    void expect(char c) {
        if (!peek(c)) throw ParseError(std::string("expected '") + c + "'", pos);
        ++pos;
    }
    bool peek_digit() {
        ws();
        return pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]));
    }
    Natural nat() {
        ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw ParseError("expected natural number", start);
        return Natural(std::string(s.substr(start, pos - start)));
    }

    Ordinal::Term term(std::size_t& at) {
        ws();
        at = pos;
        if (peek_digit()) {
            Natural n = nat();
            if (n == 0) throw ParseError("zero coefficient is not canonical", at);
            return {Ordinal(), n};
        }
        expect('w');
        Ordinal exp(1ULL);
        if (peek('^')) {
            ++pos;
            if (peek('(')) {
                ++pos;
                exp = ordinal();
                expect(')');
            } else if (peek('w')) {
                // shorthand w^w for w^(w)
                ++pos;
                exp = Ordinal::omega();
            } else {
                exp = Ordinal::natural(nat());
            }
        }
        Natural c = 1;
        if (peek('*')) {
            ++pos;
            std::size_t cat = pos;
            c = nat();
            if (c == 0) throw ParseError("zero coefficient is not canonical", cat);
        }
        return {exp, c};
    }

    Ordinal ordinal() {
        ws();
        if (peek_digit()) {
            std::size_t save = pos;
            Natural n = nat();
            if (n == 0) return Ordinal();
            pos = save;
        }
        std::vector<Ordinal::Term> terms;
        for (;;) {
            std::size_t at = 0;
            auto t = term(at);
            if (!terms.empty() && !(t.exponent < terms.back().exponent))
                throw ParseError("non-canonical form: exponents must strictly descend", at);
            terms.push_back(std::move(t));
            if (!peek('+')) break;
            ++pos;
        }
        return Ordinal::from_terms(std::move(terms));
    }
};

} // namespace

std::string Ordinal::str() const {
    std::string out;
    print_ord(*this, out);
    return out;
}

Ordinal Ordinal::parse_prefix(std::string_view text, std::size_t& pos) {
    CnfParser p{text, pos};
    Ordinal r = p.ordinal();
    pos = p.pos;
    return r;
}

Ordinal Ordinal::parse(std::string_view text) {
    std::size_t pos = 0;
    Ordinal r = parse_prefix(text, pos);
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) throw ParseError("unexpected trailing input", pos);
    return r;
}

std::strong_ordering cmp_ord(const Ordinal& a, const Ordinal& b) { return a <=> b; }
Ordinal add_ord(const Ordinal& a, const Ordinal& b) { return a + b; }
OrdinalKind classify(const Ordinal& a) { return a.kind(); }

BlockDecomposition block_decompose(const Ordinal& a) {
    if (a.kind() != OrdinalKind::successor) return {a, 0};
    auto t = a.terms();
    Natural m = t.back().coeff;
    t.pop_back();
    return {Ordinal::from_terms(std::move(t)), m};
}

Ordinal gamma_of(const Ordinal& a) { return block_decompose(a).limit_part; }
Natural finite_offset(const Ordinal& a) { return a.finite_part(); }

namespace {

// lambda = head + w^beta
std::pair<Ordinal, Ordinal> split_last_power(const Ordinal& lambda) {
    auto t = lambda.terms();
    Ordinal beta = t.back().exponent;
    if (t.back().coeff == 1) {
        t.pop_back();
    } else {
        t.back().coeff -= 1;
    }
    return {Ordinal::from_terms(std::move(t)), beta};
}

} // namespace

Ordinal fund_seq(const Ordinal& lambda, const Natural& n) {
    if (!lambda.is_limit()) throw DomainError("fund_seq: " + lambda.str() + " is not a limit");
    auto [head, beta] = split_last_power(lambda);
    if (beta.is_successor()) {
        auto bd = block_decompose(beta);
        Ordinal pred = bd.limit_part + Ordinal::natural(bd.finite_part - 1);
        return head + Ordinal::omega_power(pred, n + 1);
    }
    return head + Ordinal::omega_power(fund_seq(beta, n));
}

Natural ladder_index(const Ordinal& lambda, const Ordinal& xi) {
    if (!lambda.is_limit()) throw DomainError("ladder_index: " + lambda.str() + " is not a limit");
    if (!(xi < lambda)) throw DomainError("ladder_index: point not below the limit");
    auto [head, beta] = split_last_power(lambda);
    if (xi < head) return 0;
    Ordinal rho = xi.minus_left(head);
    if (rho.is_zero()) return 0;
    const auto& lead = rho.terms()[0];
    if (beta.is_successor()) {
        auto bd = block_decompose(beta);
        Ordinal pred = bd.limit_part + Ordinal::natural(bd.finite_part - 1);
        return lead.exponent == pred ? lead.coeff : Natural(0);
    }
    return ladder_index(beta, lead.exponent);
}

Natural cantor_pair(const Natural& m, const Natural& n) {
    Natural s = m + n;
    return s * (s + 1) / 2 + n;
}

std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
    if (z < 0) throw DomainError("cantor_unpair: negative");
    Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
    Natural t = w * (w + 1) / 2;
    Natural n = z - t;
    return {w - n, n};
}

Ordinal pair_f(const Ordinal& xi, const Natural& n) {
    auto bd = block_decompose(xi);
    return bd.limit_part + Ordinal::natural(cantor_pair(bd.finite_part, n));
}

std::pair<Ordinal, Natural> unpair_f(const Ordinal& eta) {
    auto bd = block_decompose(eta);
    auto [m, n] = cantor_unpair(bd.finite_part);
    return {bd.limit_part + Ordinal::natural(m), n};
}

} // namespace wb
