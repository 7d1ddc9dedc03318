#include "doctest.h"

#include "wedgebench/literals.hpp"
#include "wedgebench/query.hpp"
#include "wedgebench/sampling.hpp"

using namespace wb;

namespace {

Ordinal P(const char* s) { return Ordinal::parse(s); }

Trees trees() { return Trees(std::make_shared<CoherentSystem>(), 100000); }

std::size_t parse_error_at(const std::function<void()>& f) {
    try {
        f();
    } catch (const ParseError& e) {
        return e.position();
    }
    FAIL("no parse error");
    return 0;
}

} // namespace

TEST_CASE("node literals round-trip") {
    Trees tr = trees();
    Rng rng(11);
    for (const char* a : {"0", "3", "w", "w+2", "w*2", "w^2+1", "w^3"}) {
        Ordinal h = P(a);
        for (int i = 0; i < 30; ++i) {
            SymNode t = random_t_node(tr, rng, h);
            SymNode te = random_te_node(tr, rng, h);
            SymNode u = random_u_node(tr, rng, h);
            for (auto& x : {t, te, u}) {
                std::string s = format_node(x);
                SymNode back = parse_node(tr, s);
                CHECK_MESSAGE(back == x, s);
                CHECK(format_node(back) == s);
            }
        }
    }
}

TEST_CASE("node literal examples") {
    Trees tr = trees();
    auto u = parse_u_node(tr, "u:[d5, d0]");
    CHECK(u.height == Ordinal(2));
    CHECK(tr.u_query(u, Ordinal()) == 5);
    CHECK(format_node(SymNode(u)) == "u:[d5,d0]");

    auto te = parse_node(tr, "te:w");
    CHECK(height_of(te) == P("w"));
    CHECK(format_node(te) == "te:w:{}");

    // @start is optional on input
    auto a = parse_u_node(tr, "u:[d5, tail(t:w:{}:[])]");
    auto b = parse_u_node(tr, "u:[d5,tail(t:w:{}:[])@1]");
    CHECK(a == b);
    CHECK(a.height == P("w"));

    CHECK_THROWS_AS(parse_u_node(tr, "te:w"), DomainError);
}

TEST_CASE("node literal errors carry positions") {
    Trees tr = trees();
    CHECK(parse_error_at([&] { parse_node(tr, "x:1"); }) == 0);
    CHECK(parse_error_at([&] { parse_node(tr, "u:[d5, tail(t:w:{}:[])@3]"); }) == 23);
    CHECK(parse_error_at([&] { parse_node(tr, "u:[d1, q]"); }) == 7);
    CHECK(parse_error_at([&] { parse_node(tr, "te:w:{1=3,1=5}"); }) == 10);
    CHECK(parse_error_at([&] { parse_node(tr, "u:[d1] junk"); }) == 7);
    // a well-formed literal naming a node outside its family
    CHECK_THROWS_AS(parse_node(tr, "t:w:{3}:[1]"), DomainError);
}

TEST_CASE("cover literals round-trip") {
    WedgeEngine eng{trees()};
    for (const char* s : {"subtree(T-in-U)", "subtree(truncated(T-in-U, w+1))", "subtree(safe(subtree(T-in-U)))",
                          "patched(subtree(T-in-U); u:[d1]=>{u:[d1,d0]})",
                          "table(tree{0 -, 1 0, 2 0}; 0=>{1})"}) {
        auto f = parse_cover(eng, s);
        CHECK(format_cover(*f) == s);
    }
    auto t = parse_cover(eng, "table(complete(2,2); 0=>{1,2})");
    CHECK(t->is_table());
    CHECK(parse_error_at([&] { parse_cover(eng, "subtree(T-in-V)"); }) == 8);
    CHECK(parse_error_at([&] { parse_cover(eng, "table(complete(2,2); 0=>{1}; 0=>{2})"); }) == 29);
}

TEST_CASE("tree literals") {
    Cursor c("tree{0 -, 1 0, 2 1}");
    auto t = read_tree(c);
    CHECK(t->size() == 3);
    CHECK(t->depth(2) == 2);
    CHECK(format_tree(*t) == "tree{0 -, 1 0, 2 1}");
    Cursor bad("complete(0,3)");
    CHECK_THROWS_AS(read_tree(bad), ParseError);
}

TEST_CASE("conditions and targets") {
    auto ops = ExplicitOps::binary_fixture(4);
    auto p = parse_condition(ops, "{b:=>{b:0,b:1}; b:0=>{b:01}}");
    CHECK(p.size() == 2);
    CHECK(format_condition(ops, p) == "{b:=>{b:0,b:1}; b:0=>{b:01}}");
    CHECK(parse_condition(ops, "{}").empty());
    CHECK(parse_error_at([&] { parse_condition(ops, "{b:=>{b:0}; b:=>{b:1}}"); }) == 12);

    auto ts = parse_targets(ops, "include(b:01), reach(2)");
    REQUIRE(ts.size() == 2);
    CHECK(format_target(ops, ts[0]) == "include(b:01)");
    CHECK(format_target(ops, ts[1]) == "reach(2)");
    CHECK(parse_error_at([&] { parse_targets(ops, "reach(2), grow(1)"); }) == 10);
}

TEST_CASE("queries") {
    RunConfig cfg;
    auto j = run_query("eval-e w 3", cfg);
    CHECK(j["value"] == "13");

    j = run_query("find-safe subtree(T-in-U) w", cfg);
    CHECK(j["decided"] == true);
    CHECK(j["point"] == "u:[tail(t:w:{}:[])@0]");

    j = run_query("covers-within subtree(truncated(T-in-U, w)) w+1", cfg);
    CHECK(j["covered"] == true);
    j = run_query("covers-within subtree(T-in-U) w", cfg);
    CHECK(j["covered"] == false);
    j = run_query("is-safe subtree(T-in-U) u:[tail(t:w:{}:[])@0]", cfg);
    CHECK(j["safe"] == true);
    j = run_query("is-safe table(complete(2,3); 0=>{1}) 2", cfg);
    CHECK(j["safe"] == false);

    j = run_query("isolate L:1", cfg);
    CHECK(j["ok"] == true);
    CHECK(j["box"] == "[L:1,L:1.1) x [R:1,R:0.1)");

    j = run_query("simulate include(b:0), reach(2)", cfg);
    CHECK(j["ok"] == true);
    CHECK(j["checks"]["successors_promised"] == true);

    j = run_query("extend {b:=>{b:0}} b:01", cfg);
    CHECK(j["valid"] == true);
    CHECK(j["extends"] == true);
    j = run_query("extend {} above w+1", cfg);
    CHECK(j["key"] == "u:[tail(t:w:{}:[])@0,d0]");

    j = run_query("delta-x w*2 w", cfg);
    CHECK(j["alpha"] == "w");
    CHECK(j["within_bound"] == true);

    CHECK(parse_error_at([&] { run_query("evaluate w 3", cfg); }) == 0);
    CHECK(parse_error_at([&] { run_query("eval-e w", cfg); }) == 8);
    CHECK(parse_error_at([&] { run_query("eval-e w 3 4", cfg); }) == 11);
    CHECK(parse_error_at([&] { run_query("isolate L:1.x", cfg); }) >= 8);
    CHECK_THROWS_AS(run_query("extend {b:=>{b:0}} b:10", cfg), DomainError);
}
