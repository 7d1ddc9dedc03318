#include "doctest.h"

#include "wedgebench/random.hpp"
#include "wedgebench/sorgenfrey.hpp"

using namespace wb;

namespace {

TaggedPoint L(std::vector<Natural> d) { return TaggedPoint(Side::left, EvZeroSeq(std::move(d))); }

TaggedPoint random_point(Rng& rng) {
    std::vector<Natural> d;
    std::size_t n = 1 + rng.below(5);
    for (std::size_t i = 0; i < n; ++i) d.emplace_back(rng.chance(40) ? 0 : rng.below(4));
    if (EvZeroSeq(d).is_zero()) d.back() = 1 + rng.below(3);
    return TaggedPoint(rng.coin() ? Side::left : Side::right, EvZeroSeq(d));
}

// independent order: pad to a common length and compare as tuples
bool less_oracle(const TaggedPoint& a, const TaggedPoint& b) {
    if (a.side != b.side) return a.side == Side::left;
    std::size_t n = std::max(a.seq.size(), b.seq.size());
    std::vector<Natural> x = a.seq.digits, y = b.seq.digits;
    x.resize(n, 0);
    y.resize(n, 0);
    return a.side == Side::left ? x < y : y < x;
}

} // namespace

TEST_CASE("lexicographic order and the involution") {
    CHECK(lex_cmp(EvZeroSeq({1}), EvZeroSeq({1, 1})) == std::strong_ordering::less);
    CHECK(lex_cmp(EvZeroSeq({1, 0, 0}), EvZeroSeq({1})) == std::strong_ordering::equal);
    CHECK(EvZeroSeq({2, 0, 0}).size() == 1);
    CHECK_THROWS_AS(TaggedPoint(Side::left, EvZeroSeq({0, 0})), DomainError);
    CHECK(L({5}) < neg(L({1})));
    Rng rng(83);
    for (int i = 0; i < 1000; ++i) {
        auto p = random_point(rng), q = random_point(rng), r = random_point(rng);
        CHECK(neg(neg(p)) == p);
        CHECK((p < q) == less_oracle(p, q));
        if (p < q) CHECK(neg(q) < neg(p));
        if (p < q && q < r) CHECK(p < r);
        CHECK(((p < q) + (q < p) + (p == q)) == 1);
        CHECK(point_below(p) < p);
        CHECK(p < point_above(p));
    }
}

TEST_CASE("literals") {
    CHECK(to_string(parse_point("L:1.0.2")) == "L:1.0.2");
    CHECK(to_string(parse_point("R:3.0")) == "R:3");
    CHECK_THROWS_AS(parse_point("L:0.0"), ParseError);
    CHECK_THROWS_AS(parse_point("Q:1"), ParseError);
    CHECK_THROWS_AS(parse_point("L:1..2"), ParseError);
    auto iv = parse_interval("[L:1,R:2)");
    CHECK(iv.lo == L({1}));
    CHECK(to_string(iv) == "[L:1,R:2)");
    CHECK_THROWS_AS(parse_interval("[L:2,L:1)"), DomainError);
}

TEST_CASE("density") {
    CHECK(find_between(L({1}), L({3})) == L({2}));
    CHECK(find_between(L({1}), L({2})) == L({1, 1}));
    CHECK(find_between(L({1, 4}), L({2})) == L({1, 4, 1}));
    CHECK(find_between(L({4}), parse_point("R:1")) == L({5}));
    CHECK_THROWS_AS(find_between(L({2}), L({2})), DomainError);
    Rng rng(89);
    for (int i = 0; i < 10000; ++i) {
        auto p = random_point(rng), q = random_point(rng);
        if (p == q) continue;
        if (q < p) std::swap(p, q);
        auto z = find_between(p, q);
        CHECK(less_oracle(p, z));
        CHECK(less_oracle(z, q));
    }
    // repeated halving toward a point stays strictly inside
    TaggedPoint lo = L({1}), hi = L({1, 0, 0, 1});
    for (int i = 0; i < 200; ++i) {
        auto z = find_between(lo, hi);
        CHECK(lo < z);
        CHECK(z < hi);
        (i % 2 ? lo : hi) = z;
    }
}

TEST_CASE("the antidiagonal is discrete") {
    Rng rng(97);
    for (int i = 0; i < 200; ++i) {
        auto x = random_point(rng);
        auto b = isolating_box(x);
        CHECK(b.u < x);
        CHECK(x < b.v);
        CHECK(b.contains(x, neg(x)));
        // random points, and points squeezed against x from both sides
        for (int j = 0; j < 200; ++j) {
            auto y = random_point(rng);
            if (y == x) continue;
            CHECK(!b.contains(y, neg(y)));
        }
        TaggedPoint a = b.u, c = b.v;
        for (int j = 0; j < 20; ++j) {
            a = find_between(a, x);
            c = find_between(x, c);
            CHECK(!b.contains(a, neg(a)));
            CHECK(!b.contains(c, neg(c)));
            CHECK(b.contains(c, neg(x)));
        }
    }
}

TEST_CASE("uncovered left endpoints") {
    auto a = L({1}), b = L({2}), c = L({3});
    CHECK(uncovered_left_endpoints({HalfOpenInterval(a, c)}) == std::vector<TaggedPoint>{a});
    CHECK(uncovered_left_endpoints({HalfOpenInterval(a, b), HalfOpenInterval(b, c)}) == std::vector<TaggedPoint>{a, b});
    CHECK(uncovered_left_endpoints({HalfOpenInterval(a, c), HalfOpenInterval(b, c)}) == std::vector<TaggedPoint>{a});
    // the result is the union minus the open interiors, checked on a grid
    Rng rng(101);
    for (int round = 0; round < 200; ++round) {
        std::vector<HalfOpenInterval> u;
        std::vector<TaggedPoint> probe;
        for (int i = 0; i < 5; ++i) {
            auto p = random_point(rng), q = random_point(rng);
            if (p == q) continue;
            if (q < p) std::swap(p, q);
            u.emplace_back(p, q);
            probe.push_back(p);
            probe.push_back(q);
            probe.push_back(find_between(p, q));
        }
        auto A = uncovered_left_endpoints(u);
        for (auto& z : probe) {
            bool in_union = false, in_w = false;
            for (auto& i : u) {
                in_union = in_union || i.contains(z);
                in_w = in_w || i.interior_contains(z);
            }
            CHECK((in_union && !in_w) == std::binary_search(A.begin(), A.end(), z));
        }
        // the injection of the counting argument
        std::map<TaggedPoint, TaggedPoint> bounds;
        for (auto& x : A) {
            for (auto& i : u)
                if (i.lo == x && (!bounds.count(x) || i.hi < bounds.at(x))) bounds.insert_or_assign(x, i.hi);
        }
        auto d = dense_injection(A, bounds);
        CHECK(d.size() == A.size());
        const TaggedPoint* prev = nullptr;
        for (auto& x : A) {
            CHECK(x < d.at(x));
            CHECK(d.at(x) < bounds.at(x));
            if (prev) CHECK(*prev < d.at(x));
            prev = &d.at(x);
        }
    }
}

TEST_CASE("dense injection contract") {
    auto d = dense_injection({L({1})}, {{L({1}), L({2})}});
    CHECK(d.at(L({1})) == L({1, 1}));
    CHECK_THROWS_AS(dense_injection({L({1}), L({2})}, {{L({1}), L({3})}, {L({2}), L({4})}}), DomainError);
    CHECK_THROWS_AS(dense_injection({L({1})}, {{L({1}), L({1})}}), DomainError);
    CHECK_THROWS_AS(dense_injection({L({1})}, {}), DomainError);
    auto ok = dense_injection({L({1}), L({2}), L({3})}, {{L({1}), L({2})}, {L({2}), L({3})}, {L({3}), L({3, 5})}});
    CHECK(ok.at(L({1})) < ok.at(L({2})));
    CHECK(ok.at(L({2})) < ok.at(L({3})));
}
