#pragma once

#include <optional>
#include <string>

#include "wedgebench/ordinal.hpp"

namespace wb {

// Self-delimiting bit string of an ordinal: per term '1' + bits(exponent) +
// gamma(coeff), terminated by '0'.
void append_ordinal_bits(const Ordinal& a, std::string& out);
void append_gamma(const Natural& c, std::string& out); // c >= 1

// Reads one ordinal / one gamma code at pos; nullopt if malformed or non-canonical.
std::optional<Ordinal> read_ordinal_bits(const std::string& bits, std::size_t& pos);
std::optional<Natural> read_gamma(const std::string& bits, std::size_t& pos);

// Bijection between finite bit strings and N: s -> 2^|s| - 1 + int(s).
Natural bits_to_numeral(const std::string& bits);
std::string numeral_to_bits(const Natural& k);

Natural structural_code(const Ordinal& a);
std::optional<Ordinal> decode_structural(const Natural& k);

// Identity on naturals, structural code otherwise. Injective on the
// non-natural ordinals; (is_natural, code) is injective everywhere.
Natural godel_code(const Ordinal& a);

// The non-natural ordinal whose godel_code is k, if any.
std::optional<Ordinal> nonnatural_with_code(const Natural& k);

} // namespace wb
