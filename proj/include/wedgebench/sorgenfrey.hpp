#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "wedgebench/ordinal.hpp"

namespace wb {

// Eventually zero sequence omega -> omega; trailing zeros trimmed.
struct EvZeroSeq {
    std::vector<Natural> digits;

    EvZeroSeq() = default;
    explicit EvZeroSeq(std::vector<Natural> d);
    const Natural& at(std::size_t i) const; // zero past the stored entries
    std::size_t size() const { return digits.size(); }
    bool is_zero() const { return digits.empty(); }
    friend bool operator==(const EvZeroSeq&, const EvZeroSeq&) = default;
};

std::strong_ordering lex_cmp(const EvZeroSeq& a, const EvZeroSeq& b);

enum class Side { left, right };

// X + X*: the left copy ordered lexicographically, the right copy reversed and
// placed above it. Zero sequences are excluded.
struct TaggedPoint {
    Side side = Side::left;
    EvZeroSeq seq;

    TaggedPoint() = default;
    TaggedPoint(Side s, EvZeroSeq q);
    friend bool operator==(const TaggedPoint&, const TaggedPoint&) = default;
};

std::strong_ordering operator<=>(const TaggedPoint& a, const TaggedPoint& b);
TaggedPoint neg(const TaggedPoint& p);

// "L:1.0.2", "R:3"
TaggedPoint parse_point(const std::string& text);
std::string to_string(const TaggedPoint& p);

struct HalfOpenInterval {
    TaggedPoint lo, hi;
    HalfOpenInterval(TaggedPoint l, TaggedPoint h);
    bool contains(const TaggedPoint& p) const { return lo <= p && p < hi; }
    bool interior_contains(const TaggedPoint& p) const { return lo < p && p < hi; }
    friend bool operator==(const HalfOpenInterval&, const HalfOpenInterval&) = default;
};

// "[L:1,L:2)"
HalfOpenInterval parse_interval(const std::string& text);
std::string to_string(const HalfOpenInterval& i);

// x < z < y
TaggedPoint find_between(const TaggedPoint& x, const TaggedPoint& y);
// canonical neighbours; point_below(p) < p < point_above(p)
TaggedPoint point_above(const TaggedPoint& p);
TaggedPoint point_below(const TaggedPoint& p);

// [x, v) x [-x, -u), which meets the antidiagonal only in (x, -x)
struct IsolatingBox {
    TaggedPoint u, x, v;
    bool contains(const TaggedPoint& a, const TaggedPoint& b) const;
};
IsolatingBox isolating_box(const TaggedPoint& x);

// left endpoints not inside any open interior: the union minus the interiors
std::vector<TaggedPoint> uncovered_left_endpoints(const std::vector<HalfOpenInterval>& u);

// x -> a point of the eventually zero set strictly between x and bounds(x);
// needs x < bounds(x) and bounds(x) <= y for consecutive x < y.
std::map<TaggedPoint, TaggedPoint> dense_injection(const std::vector<TaggedPoint>& a,
                                                  const std::map<TaggedPoint, TaggedPoint>& bounds);

} // namespace wb
