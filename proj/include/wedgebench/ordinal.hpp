#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace wb {

using Natural = boost::multiprecision::cpp_int;

// Base class for every error the core raises; the C layer maps subclasses to status codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Precondition violated by the caller (xi >= alpha, beta > height, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Honest "could not decide within budget".
class UndecidedError : public Error {
public:
    using Error::Error;
};

enum class OrdinalKind { zero, successor, limit };

class Ordinal {
public:
    struct Term;

    Ordinal() = default;
    Ordinal(unsigned long long n); // NOLINT: naturals convert implicitly
    static Ordinal natural(const Natural& n);
    static Ordinal omega();
    static Ordinal omega_power(Ordinal exponent, Natural coeff = 1);
    // Throws DomainError unless the terms are in canonical form.
    static Ordinal from_terms(std::vector<Term> terms);

    static Ordinal parse(std::string_view text);
    // Parses an ordinal starting at pos, stops at the first character that
    // cannot continue it; pos is advanced.
    static Ordinal parse_prefix(std::string_view text, std::size_t& pos);

    const std::vector<Term>& terms() const { return terms_; }

    OrdinalKind kind() const;
    bool is_zero() const { return terms_.empty(); }
    bool is_natural() const;
    bool is_limit() const { return kind() == OrdinalKind::limit; }
    bool is_successor() const { return kind() == OrdinalKind::successor; }
    bool is_limit_or_zero() const { return kind() != OrdinalKind::successor; }
    std::optional<Natural> as_natural() const;
    Natural finite_part() const;

    Ordinal operator+(const Ordinal& rhs) const;
    Ordinal& operator+=(const Ordinal& rhs) { return *this = *this + rhs; }
    Ordinal operator+(unsigned long long n) const;
    Ordinal succ() const { return *this + 1ULL; }
    // The unique d with rhs + d == *this; requires rhs <= *this.
    Ordinal minus_left(const Ordinal& rhs) const;

    std::string str() const;

    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b);

private:
    std::vector<Term> terms_;
};

struct Ordinal::Term {
    Ordinal exponent;
    Natural coeff;
    friend bool operator==(const Term&, const Term&) = default;
};

struct BlockDecomposition {
    Ordinal limit_part;
    Natural finite_part;
};

std::strong_ordering cmp_ord(const Ordinal& a, const Ordinal& b);
Ordinal add_ord(const Ordinal& a, const Ordinal& b);
OrdinalKind classify(const Ordinal& a);
BlockDecomposition block_decompose(const Ordinal& a);
// gamma_a: largest limit-or-zero ordinal <= a.
Ordinal gamma_of(const Ordinal& a);
// Finite distance a - gamma_a.
Natural finite_offset(const Ordinal& a);

Ordinal fund_seq(const Ordinal& lambda, const Natural& n);
// Least n with xi < fund_seq(lambda, n); requires xi < lambda.
Natural ladder_index(const Ordinal& lambda, const Ordinal& xi);

Natural cantor_pair(const Natural& m, const Natural& n);
std::pair<Natural, Natural> cantor_unpair(const Natural& z);
Ordinal pair_f(const Ordinal& xi, const Natural& n);
std::pair<Ordinal, Natural> unpair_f(const Ordinal& eta);

// Fits-in-u64 check used whenever a natural indexes a host container.
std::uint64_t to_u64(const Natural& n, const char* what);

std::string to_string(const Natural& n);

} // namespace wb
