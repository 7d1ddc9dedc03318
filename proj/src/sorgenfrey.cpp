#include "wedgebench/sorgenfrey.hpp"

#include <algorithm>
#include <cctype>

namespace wb {

namespace {

const Natural kZero = 0;

void trim(std::vector<Natural>& d) {
    while (!d.empty() && d.back() == 0) d.pop_back();
}

// lexicographic point strictly between a < b
EvZeroSeq lex_between(const EvZeroSeq& a, const EvZeroSeq& b) {
    std::size_t n = std::max(a.size(), b.size()), k = 0;
    while (k < n && a.at(k) == b.at(k)) ++k;
    std::vector<Natural> z(a.digits.begin(), a.digits.begin() + static_cast<std::ptrdiff_t>(std::min(k, a.size())));
    z.resize(k, 0);
    if (b.at(k) - a.at(k) >= 2) {
        z.push_back(a.at(k) + 1);
        return EvZeroSeq(std::move(z));
    }
    // a with a 1 past both supports
    z = a.digits;
    z.resize(n, 0);
    z.push_back(1);
    return EvZeroSeq(std::move(z));
}

EvZeroSeq lex_above(const EvZeroSeq& a) {
    auto z = a.digits;
    z.push_back(1);
    return EvZeroSeq(std::move(z));
}

EvZeroSeq lex_below(const EvZeroSeq& a) {
    auto z = a.digits;
    z.back() -= 1;
    z.push_back(1);
    return EvZeroSeq(std::move(z));
}

} // namespace

EvZeroSeq::EvZeroSeq(std::vector<Natural> d) : digits(std::move(d)) {
    for (auto& x : digits)
        if (x < 0) throw DomainError("sequence entries are naturals");
    trim(digits);
}

const Natural& EvZeroSeq::at(std::size_t i) const { return i < digits.size() ? digits[i] : kZero; }

std::strong_ordering lex_cmp(const EvZeroSeq& a, const EvZeroSeq& b) {
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (a.at(i) != b.at(i)) return a.at(i) < b.at(i) ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

TaggedPoint::TaggedPoint(Side s, EvZeroSeq q) : side(s), seq(std::move(q)) {
    if (seq.is_zero()) throw DomainError("the zero sequence is not a point");
}

std::strong_ordering operator<=>(const TaggedPoint& a, const TaggedPoint& b) {
    if (a.side != b.side) return a.side == Side::left ? std::strong_ordering::less : std::strong_ordering::greater;
    return a.side == Side::left ? lex_cmp(a.seq, b.seq) : lex_cmp(b.seq, a.seq);
}

TaggedPoint neg(const TaggedPoint& p) { return TaggedPoint(p.side == Side::left ? Side::right : Side::left, p.seq); }

TaggedPoint parse_point(const std::string& text) {
    if (text.size() < 3 || (text[0] != 'L' && text[0] != 'R') || text[1] != ':')
        throw ParseError("point literal must look like L:1.0.2 or R:3", 0);
    std::vector<Natural> d;
    std::size_t i = 2;
    while (true) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw ParseError("expected a digit in point literal", i);
        d.emplace_back(text.substr(i, j - i));
        if (j == text.size()) break;
        if (text[j] != '.') throw ParseError("expected '.' in point literal", j);
        i = j + 1;
    }
    EvZeroSeq s(std::move(d));
    if (s.is_zero()) throw ParseError("the zero sequence is not a point", 2);
    return TaggedPoint(text[0] == 'L' ? Side::left : Side::right, std::move(s));
}

std::string to_string(const TaggedPoint& p) {
    std::string out = p.side == Side::left ? "L:" : "R:";
    for (std::size_t i = 0; i < p.seq.size(); ++i) out += (i ? "." : "") + p.seq.digits[i].str();
    return out;
}

HalfOpenInterval::HalfOpenInterval(TaggedPoint l, TaggedPoint h) : lo(std::move(l)), hi(std::move(h)) {
    if (!(lo < hi)) throw DomainError("interval [" + to_string(lo) + "," + to_string(hi) + ") is empty");
}

HalfOpenInterval parse_interval(const std::string& text) {
    auto comma = text.find(',');
    if (text.size() < 2 || text.front() != '[' || text.back() != ')' || comma == std::string::npos)
        throw ParseError("interval literal must look like [L:1,L:2)", 0);
    return HalfOpenInterval(parse_point(text.substr(1, comma - 1)), parse_point(text.substr(comma + 1, text.size() - comma - 2)));
}

std::string to_string(const HalfOpenInterval& i) { return "[" + to_string(i.lo) + "," + to_string(i.hi) + ")"; }

TaggedPoint find_between(const TaggedPoint& x, const TaggedPoint& y) {
    if (!(x < y)) throw DomainError("find_between: " + to_string(x) + " is not below " + to_string(y));
    if (x.side != y.side) return TaggedPoint(Side::left, EvZeroSeq({Natural(x.seq.at(0) + 1)}));
    if (x.side == Side::left) return TaggedPoint(Side::left, lex_between(x.seq, y.seq));
    return TaggedPoint(Side::right, lex_between(y.seq, x.seq));
}

TaggedPoint point_above(const TaggedPoint& p) {
    return TaggedPoint(p.side, p.side == Side::left ? lex_above(p.seq) : lex_below(p.seq));
}

TaggedPoint point_below(const TaggedPoint& p) {
    return TaggedPoint(p.side, p.side == Side::left ? lex_below(p.seq) : lex_above(p.seq));
}

bool IsolatingBox::contains(const TaggedPoint& a, const TaggedPoint& b) const {
    return x <= a && a < v && neg(x) <= b && b < neg(u);
}

IsolatingBox isolating_box(const TaggedPoint& x) {
    IsolatingBox b{point_below(x), x, point_above(x)};
    if (!(b.u < x && x < b.v)) throw Error("isolating_box: anchors out of order");
    return b;
}

std::vector<TaggedPoint> uncovered_left_endpoints(const std::vector<HalfOpenInterval>& u) {
    std::vector<TaggedPoint> out;
    for (auto& i : u) {
        bool inside = std::any_of(u.begin(), u.end(), [&](const HalfOpenInterval& j) { return j.interior_contains(i.lo); });
        if (!inside) out.push_back(i.lo);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::map<TaggedPoint, TaggedPoint> dense_injection(const std::vector<TaggedPoint>& a,
                                                  const std::map<TaggedPoint, TaggedPoint>& bounds) {
    std::vector<TaggedPoint> s = a;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw DomainError("dense_injection: repeated point");
    std::map<TaggedPoint, TaggedPoint> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        auto it = bounds.find(s[i]);
        if (it == bounds.end()) throw DomainError("dense_injection: no bound for " + to_string(s[i]));
        if (!(s[i] < it->second)) throw DomainError("dense_injection: bound not above " + to_string(s[i]));
        if (i + 1 < s.size() && s[i + 1] < it->second)
            throw DomainError("dense_injection: bound of " + to_string(s[i]) + " passes " + to_string(s[i + 1]));
        out.emplace(s[i], find_between(s[i], it->second));
    }
    // certify: strictly increasing
    const TaggedPoint* prev = nullptr;
    for (auto& x : s) {
        auto& d = out.at(x);
        if (!(x < d && d < bounds.at(x)) || (prev && !(*prev < d))) throw Error("dense_injection: certification failed");
        prev = &d;
    }
    return out;
}

} // namespace wb
