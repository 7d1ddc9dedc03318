#include "wedgebench/coding.hpp"

namespace wb {

void append_gamma(const Natural& c, std::string& out) {
    if (c < 1) throw DomainError("gamma code needs a positive argument");
    std::size_t len = msb(c) + 1;
    out.append(len - 1, '0');
    for (std::size_t i = len; i-- > 0;) out += bit_test(c, static_cast<unsigned>(i)) ? '1' : '0';
}

void append_ordinal_bits(const Ordinal& a, std::string& out) {
    for (const auto& t : a.terms()) {
        out += '1';
        append_ordinal_bits(t.exponent, out);
        append_gamma(t.coeff, out);
    }
    out += '0';
}

std::optional<Natural> read_gamma(const std::string& bits, std::size_t& pos) {
    std::size_t zeros = 0;
    while (pos < bits.size() && bits[pos] == '0') {
        ++zeros;
        ++pos;
    }
    if (pos + zeros + 1 > bits.size()) return std::nullopt;
    Natural v = 0;
    for (std::size_t i = 0; i <= zeros; ++i) {
        v <<= 1;
        if (bits[pos++] == '1') v += 1;
    }
    return v;
}

std::optional<Ordinal> read_ordinal_bits(const std::string& bits, std::size_t& pos) {
    std::vector<Ordinal::Term> terms;
    for (;;) {
        if (pos >= bits.size()) return std::nullopt;
        char c = bits[pos++];
        if (c == '0') break;
        auto e = read_ordinal_bits(bits, pos);
        if (!e) return std::nullopt;
        auto k = read_gamma(bits, pos);
        if (!k) return std::nullopt;
        if (!terms.empty() && !(*e < terms.back().exponent)) return std::nullopt;
        terms.push_back({std::move(*e), std::move(*k)});
    }
    return Ordinal::from_terms(std::move(terms));
}

Natural bits_to_numeral(const std::string& bits) {
    Natural v = 1;
    for (char c : bits) {
        v <<= 1;
        if (c == '1') v += 1;
    }
    return v - 1;
}

std::string numeral_to_bits(const Natural& k) {
    Natural v = k + 1;
    std::size_t len = msb(v);
    std::string out;
    out.reserve(len);
    for (std::size_t i = len; i-- > 0;) out += bit_test(v, static_cast<unsigned>(i)) ? '1' : '0';
    return out;
}

Natural structural_code(const Ordinal& a) {
    std::string s;
    append_ordinal_bits(a, s);
    return bits_to_numeral(s);
}

std::optional<Ordinal> decode_structural(const Natural& k) {
    if (k < 0) return std::nullopt;
    std::string s = numeral_to_bits(k);
    std::size_t pos = 0;
    auto a = read_ordinal_bits(s, pos);
    if (!a || pos != s.size()) return std::nullopt;
    return a;
}

Natural godel_code(const Ordinal& a) {
    if (auto n = a.as_natural()) return *n;
    return structural_code(a);
}

std::optional<Ordinal> nonnatural_with_code(const Natural& k) {
    auto a = decode_structural(k);
    if (!a || a->is_natural()) return std::nullopt;
    return a;
}

} // namespace wb
