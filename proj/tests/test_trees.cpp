#include "doctest.h"

#include <set>

#include "wedgebench/aronszajn.hpp"
#include "wedgebench/coding.hpp"
#include "wedgebench/sampling.hpp"

using namespace wb;

namespace {

Ordinal P(const char* s) { return Ordinal::parse(s); }

const Trees& trees() {
    static Trees tr;
    return tr;
}

const char* kGamma[] = {"w", "w*2", "w*3", "w^2", "w^2+w", "w^2*2", "w^3", "w^(w)"};

} // namespace

TEST_CASE("explicit trees") {
    auto t = ExplicitTree::complete(2, 4);
    CHECK(t.size() == 15);
    CHECK(t.height() == 4);
    auto id = [&](const char* l) { return *t.find_label(l); };
    auto ac = branch_to_antichain(t, {id(""), id("0"), id("00")});
    REQUIRE(ac.size() == 3);
    CHECK(t.label(ac[0]) == "1");
    CHECK(t.label(ac[1]) == "01");
    CHECK(t.label(ac[2]) == "000");
    CHECK(branch_to_antichain(t, {id("")}).size() == 1);
    CHECK_THROWS_AS(branch_to_antichain(t, {id("0"), id("1")}), DomainError);
    CHECK_THROWS_AS(branch_to_antichain(t, {id("000")}), DomainError);

    auto p = ExplicitTree::parse("# comment\n3 1\n1 0\n0 -\n2 0\n");
    CHECK(p.size() == 4);
    CHECK(p.depth(3) == 2);
    CHECK(p.compare(0, 3) == TreeOrder::below);
    CHECK(p.compare(2, 3) == TreeOrder::incomparable);
    CHECK_THROWS_AS(ExplicitTree::parse("1 2\n2 1\n"), DomainError);
    CHECK_THROWS_AS(ExplicitTree::parse("1 2 3\n"), ParseError);

    // random chains in random trees: outputs are pairwise incomparable
    Rng rng(41);
    int done = 0;
    while (done < 50) {
        ExplicitTree r;
        r.add(0, std::nullopt);
        int n = 5 + static_cast<int>(rng.below(40));
        for (int i = 1; i < n; ++i) r.add(i, static_cast<ExplicitTree::Id>(rng.below(i)));
        // a chain from the root down along random children with a sibling outside
        std::vector<ExplicitTree::Id> b{0};
        while (true) {
            auto& ch = r.children(b.back());
            if (ch.size() < 2 || rng.chance(30)) break;
            b.push_back(ch[rng.below(ch.size())]);
        }
        bool ok = true;
        for (auto x : b) {
            int outside = 0;
            for (auto c : r.children(x))
                if (std::find(b.begin(), b.end(), c) == b.end()) ++outside;
            if (outside == 0) ok = false;
        }
        if (!ok) continue;
        ++done;
        auto a = branch_to_antichain(r, b);
        CHECK(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(*r.parent(a[i]) == b[i]);
            for (std::size_t j = i + 1; j < a.size(); ++j) CHECK(r.compare(a[i], a[j]) == TreeOrder::incomparable);
        }
    }
}

TEST_CASE("T^e nodes") {
    const auto& tr = trees();
    TeNode stem = tr.te_node(P("w"), {});
    for (int i = 0; i < 5; ++i) CHECK(tr.te_query(stem, i) == tr.system().eval(P("w"), i));
    TeNode a = tr.te_node(P("w"), {{3, 2}});
    CHECK(tr.te_query(a, 3) == 2);
    TeNode b = tr.te_node(P("w"), {{3, 8}});
    CHECK(tr.te_query(b, 3) == 8);
    CHECK_THROWS_AS(tr.te_node(3, {{0, 5}}), DomainError);
    CHECK(tr.compare(a, b) == TreeOrder::incomparable);
    // swapping two stem values is injective
    TeNode s = tr.te_node(3, {{0, 5}, {1, 1}});
    CHECK(tr.te_query(s, 0) == 5);
    // restriction and pointwise agreement
    Rng rng(43);
    for (const char* g : kGamma) {
        Ordinal h = P(g) + Ordinal(2);
        for (int i = 0; i < 20; ++i) {
            TeNode x = random_te_node(tr, rng, h);
            Ordinal beta = random_below(rng, h);
            TeNode r = tr.te_restrict(x, beta);
            CHECK(r.height == beta);
            for (auto& [k, v] : r.delta) CHECK(v != tr.system().eval(beta, k));
            for (int j = 0; j < 20 && !beta.is_zero(); ++j) {
                Ordinal xi = random_below(rng, beta);
                CHECK(tr.te_query(r, xi) == tr.te_query(x, xi));
            }
            CHECK(tr.compare(r, x) == (beta == h ? TreeOrder::equal : TreeOrder::below));
            TeNode ext = tr.te_canonical_extension(x, h + Ordinal(3));
            CHECK(tr.compare(x, ext) == TreeOrder::below);
            // the extension is still injective: re-certify it
            CHECK_NOTHROW(tr.te_node(ext.height, ext.delta));
        }
    }
    auto succ = tr.te_successors(tr.te_node(3, {}), 4);
    CHECK(succ.truncated);
    REQUIRE(succ.nodes.size() == 4);
    std::set<Natural> vals;
    for (auto& y : succ.nodes) {
        Natural v = tr.te_query(y, 3);
        CHECK(!tr.te_in_range(tr.te_node(3, {}), v));
        vals.insert(v);
        CHECK(tr.compare(tr.te_node(3, {}), y) == TreeOrder::below);
    }
    CHECK(vals.size() == 4);
    auto lvl = tr.te_level(P("w+1"), 30);
    CHECK(lvl.nodes.size() == 30);
    for (std::size_t i = 0; i < lvl.nodes.size(); ++i) {
        CHECK(lvl.nodes[i].height == P("w+1"));
        CHECK_NOTHROW(tr.te_node(lvl.nodes[i].height, lvl.nodes[i].delta));
        for (std::size_t j = 0; j < i; ++j) CHECK(!(lvl.nodes[i] == lvl.nodes[j]));
    }
    CHECK(tr.te_level(0, 5).nodes.size() == 1);
}

TEST_CASE("x_alpha and delta_x") {
    const auto& tr = trees();
    CHECK(tr.x_alpha(0).height.is_zero());
    CHECK(tr.t_query(tr.x_alpha(P("w")), 2));
    CHECK(!tr.t_query(tr.x_alpha(P("w")), 0));
    CHECK_THROWS_AS(tr.x_alpha(P("w+1")), DomainError);
    Rng rng(47);
    int nonempty = 0;
    for (const char* a : kGamma)
        for (const char* b : kGamma) {
            Ordinal al = P(a), be = P(b);
            if (al > be) continue;
            auto dx = tr.delta_x(al, be);
            auto cand = tr.delta_x_candidates(al, be);
            if (!dx.empty()) ++nonempty;
            for (auto& e : dx) {
                CHECK(std::binary_search(cand.begin(), cand.end(), e));
                CHECK(tr.x_bit(al, e) != tr.x_bit(be, e));
            }
            for (int i = 0; i < 200; ++i) {
                Ordinal eta = random_below(rng, al);
                bool differs = tr.x_bit(al, eta) != tr.x_bit(be, eta);
                CHECK(differs == std::binary_search(dx.begin(), dx.end(), eta));
            }
            // points pairing a Delta_e coordinate with its two values
            for (auto& xi : tr.system().delta(al, be))
                for (int n = 0; n < 6; ++n) {
                    Ordinal eta = pair_f(xi, n);
                    if (!(eta < al)) continue;
                    bool differs = tr.x_bit(al, eta) != tr.x_bit(be, eta);
                    CHECK(differs == std::binary_search(dx.begin(), dx.end(), eta));
                }
        }
    CHECK(nonempty > 3);
}

TEST_CASE("T nodes") {
    const auto& tr = trees();
    TNode x = tr.t_node(P("w"), {}, {});
    CHECK(x == tr.x_alpha(P("w")));
    CHECK(tr.t_contains(ForeignBits{P("w"), P("w"), false, {}}));
    TNode y = tr.t_node(P("w+2"), {5}, {true, false});
    CHECK(tr.t_query(y, 5) != tr.x_bit(P("w"), 5));
    CHECK(tr.t_query(y, 4) == tr.x_bit(P("w"), 4));
    CHECK(tr.t_query(y, P("w")));
    CHECK(!tr.t_query(y, P("w+1")));
    CHECK_THROWS_AS(tr.t_node(P("w+2"), {}, {true}), DomainError);
    CHECK_THROWS_AS(tr.t_node(P("w+2"), {P("w")}, {true, true}), DomainError);

    Rng rng(53);
    for (const char* g : kGamma) {
        for (int i = 0; i < 30; ++i) {
            Ordinal h = random_height_near(rng, P(g));
            TNode t = random_t_node(tr, rng, h);
            for (auto& s : tr.t_successors(t).nodes) CHECK(tr.compare(t, s) == TreeOrder::below);
            Ordinal beta = random_below(rng, h);
            TNode r = tr.t_restrict(t, beta);
            CHECK(r == tr.t_node(r.height, r.flips, r.tail));
            for (int j = 0; j < 30 && !beta.is_zero(); ++j) {
                Ordinal eta = random_below(rng, beta);
                CHECK(tr.t_query(r, eta) == tr.t_query(t, eta));
            }
            Ordinal gamma2 = gamma_of(beta);
            CHECK(tr.t_restrict(tr.t_restrict(t, beta), gamma2) == tr.t_restrict(t, gamma2));
            // foreign spellings of members and non-members
            Ordinal anc = P("w^(w)+w");
            ForeignBits fb{anc, h, false, {random_below(rng, h)}};
            auto conv = tr.t_from_foreign(fb);
            REQUIRE(conv);
            for (int j = 0; j < 20; ++j) {
                Ordinal eta = random_below(rng, h);
                CHECK(tr.t_query(*conv, eta) == tr.foreign_query(fb, eta));
            }
            fb.complement = true;
            CHECK(!tr.t_contains(fb));
            Ordinal big = P("w^(w)*3");
            TNode ext = tr.t_canonical_extension(t, big + Ordinal(2));
            CHECK(tr.compare(t, ext) == TreeOrder::below);
        }
    }
    CHECK(tr.t_contains(ForeignBits{P("w"), 3, true, {}}));
    auto lvl = tr.t_level(4, 100);
    CHECK(lvl.nodes.size() == 16);
    CHECK(!lvl.truncated);
    auto lvl2 = tr.t_level(P("w+1"), 50);
    CHECK(lvl2.truncated);
    CHECK(lvl2.nodes.size() == 50);
    CHECK(lvl2.nodes[0].flips.empty());
    CHECK(lvl2.nodes[1].flips.empty());
    CHECK(lvl2.nodes[2].flips.size() == 1);
    std::set<std::vector<bool>> seen;
    for (auto& n : lvl2.nodes) {
        std::vector<bool> key;
        for (int j = 0; j < 12; ++j) key.push_back(tr.t_query(n, j));
        key.push_back(tr.t_query(n, P("w")));
        seen.insert(key);
    }
    CHECK(seen.size() == 50);
}

TEST_CASE("finite levels of T agree with the explicit binary tree") {
    const auto& tr = trees();
    auto ex = ExplicitTree::complete(2, 5);
    std::vector<TNode> sym;
    std::vector<ExplicitTree::Id> ids;
    for (int d = 0; d < 5; ++d) {
        auto lvl = tr.t_level(d, 1000);
        CHECK(!lvl.truncated);
        CHECK(lvl.nodes.size() == ex.level(d).size());
        for (auto& n : lvl.nodes) {
            std::string label;
            for (bool b : n.tail) label += b ? '1' : '0';
            sym.push_back(n);
            ids.push_back(*ex.find_label(label));
        }
    }
    for (std::size_t i = 0; i < sym.size(); ++i) {
        auto succ = tr.t_successors(sym[i]);
        if (sym[i].tail.size() < 4) CHECK(succ.nodes.size() == ex.children(ids[i]).size());
        for (std::size_t j = 0; j < sym.size(); ++j) CHECK(tr.compare(sym[i], sym[j]) == ex.compare(ids[i], ids[j]));
    }
}

TEST_CASE("U nodes") {
    const auto& tr = trees();
    UNode d = tr.u_node({UComp::make_digit(5)});
    CHECK(tr.u_query(d, 0) == 5);
    UNode two = tr.u_node({UComp::make_digit(3), UComp::make_digit(7)});
    CHECK(tr.u_restrict(two, 1) == tr.u_node({UComp::make_digit(3)}));
    TNode xw = tr.x_alpha(P("w"));
    UNode e = tr.u_embed_T(xw);
    REQUIRE(e.comps.size() == 1);
    CHECK(!e.comps[0].is_digit());
    CHECK(*e.comps[0].tail == xw);
    UNode g = tr.u_glue(d, xw);
    REQUIRE(g.comps.size() == 2);
    CHECK(g.comps[0] == UComp::make_digit(5));
    CHECK(*g.comps[1].tail == xw);
    for (int i = 1; i < 30; ++i) CHECK(tr.u_query(g, i) == (tr.x_bit(P("w"), i) ? 1 : 0));
    // successor case: cut a tail below w
    UNode u2 = tr.u_glue(tr.u_node({UComp::make_digit(4), UComp::make_digit(9)}), xw);
    UNode c = tr.u_restrict(u2, 6);
    REQUIRE(c.comps.size() == 6);
    CHECK(c.comps[0] == UComp::make_digit(4));
    CHECK(c.comps[1] == UComp::make_digit(9));
    for (int i = 2; i < 6; ++i) CHECK(c.comps[i] == UComp::make_digit(tr.x_bit(P("w"), i) ? 1 : 0));
    // different spellings, one normal form
    UNode sp1 = tr.u_node({UComp::make_digit(tr.x_bit(P("w"), 0) ? 1 : 0), UComp::make_tail(xw)});
    CHECK(sp1 == tr.u_embed_T(xw));
    UNode sp2 = tr.u_glue(tr.u_embed_T(tr.x_alpha(P("w"))), tr.x_alpha(P("w*2")));
    UNode sp3 = tr.u_node({UComp::make_tail(tr.t_restrict(tr.x_alpha(P("w*2")), P("w"))),
                           UComp::make_tail(tr.x_alpha(P("w*2")))});
    CHECK(sp3 == tr.u_embed_T(tr.x_alpha(P("w*2"))));
    CHECK(tr.u_well_formed(sp2));
    CHECK_THROWS_AS(tr.u_glue(g, xw), DomainError);

    CHECK(tr.u_canonical_extension(tr.u_root(), 2) == tr.u_node({UComp::make_digit(0), UComp::make_digit(0)}));

    Rng rng(59);
    for (const char* gs : kGamma) {
        for (int i = 0; i < 25; ++i) {
            Ordinal h = random_height_near(rng, P(gs));
            UNode u = random_u_node(tr, rng, h);
            CHECK(tr.u_well_formed(u));
            CHECK(u.height == h);
            for (int k = 0; k < 4; ++k) {
                Ordinal beta = random_below(rng, h);
                UNode r = tr.u_restrict(u, beta);
                std::string why;
                CHECK_MESSAGE(tr.u_well_formed(r, &why), why);
                for (int j = 0; j < 20 && !beta.is_zero(); ++j) {
                    Ordinal xi = random_below(rng, beta);
                    CHECK(tr.u_query(r, xi) == tr.u_query(u, xi));
                }
                CHECK(tr.compare(r, u) == TreeOrder::below);
            }
            // T embeds pointwise
            TNode t = random_t_node(tr, rng, h);
            UNode et = tr.u_embed_T(t);
            CHECK(tr.u_in_T(et));
            CHECK(tr.u_to_T(et) == t);
            for (int j = 0; j < 20; ++j) {
                Ordinal xi = random_below(rng, h);
                CHECK(tr.u_query(et, xi) == (tr.t_query(t, xi) ? 1 : 0));
            }
            // respelling: rebuild from its restriction plus the pointwise rest
            Ordinal big = P("w^(w)*2");
            UNode ext = tr.u_canonical_extension(u, big + Ordinal(1));
            CHECK(tr.compare(u, ext) == TreeOrder::below);
        }
    }
    auto lvl = tr.u_level(P("w+1"), 60);
    CHECK(lvl.truncated);
    CHECK(lvl.nodes.size() == 60);
    for (std::size_t i = 0; i < lvl.nodes.size(); ++i) {
        CHECK(tr.u_well_formed(lvl.nodes[i]));
        CHECK(lvl.nodes[i].height == P("w+1"));
        for (std::size_t j = 0; j < i; ++j) CHECK(!(lvl.nodes[i] == lvl.nodes[j]));
    }
    auto lvl2 = tr.u_level(P("w*2"), 40);
    for (auto& n : lvl2.nodes) CHECK(tr.u_well_formed(n));
    CHECK(tr.u_level(0, 3).nodes.size() == 1);
    auto su = tr.u_successors(d, 5);
    CHECK(su.truncated);
    for (std::size_t i = 0; i < 5; ++i) CHECK(tr.u_query(su.nodes[i], 1) == i);
}

TEST_CASE("generic interface") {
    const auto& tr = trees();
    Rng rng(61);
    std::vector<SymNode> pool;
    UNode base = random_u_node(tr, rng, P("w^2+2"));
    for (int i = 0; i < 20; ++i) pool.emplace_back(tr.u_restrict(base, random_below(rng, base.height)));
    pool.emplace_back(base);
    for (int i = 0; i < 10; ++i) pool.emplace_back(random_u_node(tr, rng, P("w*2+1")));
    for (auto& x : pool) {
        CHECK(tr.tree_le(x, x) == TreeOrder::equal);
        CHECK(tr.restrict(x, height_of(x)) == x);
        for (auto& y : pool) {
            auto o = tr.tree_le(x, y);
            auto r = tr.tree_le(y, x);
            if (o == TreeOrder::below) CHECK(r == TreeOrder::above);
            if (o == TreeOrder::incomparable) CHECK(r == TreeOrder::incomparable);
            for (auto& z : pool)
                if (o == TreeOrder::below && tr.tree_le(y, z) == TreeOrder::below)
                    CHECK(tr.tree_le(x, z) == TreeOrder::below);
        }
        // down-sets are chains
        std::vector<SymNode> down;
        for (auto& y : pool)
            if (tr.tree_le(y, x) == TreeOrder::below) down.push_back(y);
        for (auto& a : down)
            for (auto& b : down) CHECK(tr.tree_le(a, b) != TreeOrder::incomparable);
    }
    CHECK_THROWS_AS(tr.tree_le(SymNode(tr.t_root()), SymNode(tr.u_root())), DomainError);
    CHECK(tr.node_query(SymNode(tr.te_node(P("w"), {{4, 8}})), 4) == 8);
    for (auto f : {Family::te, Family::t, Family::u}) {
        auto l = tr.enumerate_level(f, 0, 10);
        REQUIRE(l.nodes.size() == 1);
        CHECK(height_of(l.nodes[0]).is_zero());
    }
    auto s = tr.enumerate_successors(SymNode(tr.t_root()), 10);
    CHECK(s.nodes.size() == 2);
    CHECK(!s.truncated);
    for (int i = 0; i < 100; ++i) {
        SymNode x = pool[rng.below(pool.size())];
        Ordinal a = height_of(x) + Ordinal(rng.below(4));
        if (rng.coin()) a = P("w^3") + Ordinal(rng.below(3));
        SymNode y = tr.canonical_extension(x, a);
        CHECK(height_of(y) == a);
        if (a == height_of(x))
            CHECK(tr.tree_le(x, y) == TreeOrder::equal);
        else
            CHECK(tr.tree_le(x, y) == TreeOrder::below);
    }
}
