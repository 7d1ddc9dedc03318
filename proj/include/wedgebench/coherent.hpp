#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "wedgebench/ordinal.hpp"

namespace wb {

enum class RangeAnswer { in, out, undecided };
const char* to_string(RangeAnswer r);

// Value tokens. 4k+1: successor value of the point coded k. 4c+3: correction
// tokens, c the numeral of '0'+bits(b) (natural slot displaced at step b) or
// '1'+bits(lambda)+gamma(n+1)+gamma(i+1) (i-th collision of block n at lambda).
struct Token {
    enum class Kind { successor, displacement, block_correction, invalid } kind = Kind::invalid;
    Natural k;       // successor
    Ordinal ord;     // displacement step / limit
    Natural block;   // block_correction
    Natural index;   // block_correction
};

Natural successor_token(const Natural& k);
Natural displacement_token(const Ordinal& beta);
Natural block_correction_token(const Ordinal& lambda, const Natural& n, const Natural& i);
Token decode_token(const Natural& v);

// Lazily evaluated coherent sequence e_alpha : alpha -> omega of injections.
// All memo tables are filled idempotently behind a mutex; values are a pure
// function of the ladder rule, so concurrent first fills agree.
class CoherentSystem {
public:
    Natural eval(const Ordinal& alpha, const Ordinal& xi) const;
    // Sorted {xi < alpha : e_alpha(xi) != e_beta(xi)}.
    std::vector<Ordinal> delta(const Ordinal& alpha, const Ordinal& beta) const;
    RangeAnswer range_test(const Ordinal& alpha, const Natural& v, std::uint64_t budget) const;
    // The position of v in e_alpha, if v is in the range. Throws UndecidedError
    // when the step budget runs out.
    std::optional<Ordinal> locate(const Ordinal& alpha, const Natural& v, std::uint64_t budget) const;

    // Non-natural steps b < alpha whose natural slot godel_code(b) is displaced in e_alpha.
    std::vector<Ordinal> chase_set(const Ordinal& alpha) const;
    bool in_chase(const Ordinal& alpha, const Ordinal& nu) const;
    // Sorted collision positions of block n (n >= 1) at the limit lambda.
    std::vector<Ordinal> corrections(const Ordinal& lambda, const Natural& n) const;

    std::size_t memo_entries() const;

private:
    struct Budget {
        std::uint64_t left;
        void tick() {
            if (left == 0) throw UndecidedError("step budget exhausted");
            --left;
        }
    };

    Natural eval_impl(const Ordinal& alpha, const Ordinal& xi, Budget* b) const;
    std::vector<Ordinal> corrections_impl(const Ordinal& lambda, const Natural& n, Budget* b) const;
    std::vector<Ordinal> delta_impl(const Ordinal& alpha, const Ordinal& beta) const;

    mutable std::mutex mu_;
    mutable std::map<std::pair<Ordinal, Natural>, std::vector<Ordinal>> corr_memo_;
    mutable std::map<std::pair<Ordinal, Ordinal>, std::vector<Ordinal>> delta_memo_;
};

} // namespace wb
