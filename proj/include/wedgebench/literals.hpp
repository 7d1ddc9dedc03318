#pragma once

#include <string>
#include <string_view>

#include "wedgebench/forcing.hpp"
#include "wedgebench/wedge.hpp"

namespace wb {

// Text forms used by the CLI and the reports.
//
//   node     te:<ord>:{<ord>=<nat>,...}
//            t:<ord>:{<ord>,...}:[<bits>]
//            u:[<comp>,...]         comp: d<nat> | tail(<t-node>)@<start>
//            b:<bits>               binary fixture only
//   cover    subtree(<subtree>) | patched(<cover>; <u-node>=>{<u-node>,...}; ...)
//            | table(<tree>; <id>=>{<id>,...}; ...)
//   subtree  T-in-U | truncated(<subtree>, <ord>) | safe(<cover>)
//   tree     complete(<arity>,<levels>) | tree{<id> <parent>, ...} | file(<path>)
//   cond     {<node>=><{node,...}>; ...}
//   targets  include(<node>) | reach(<ord>), separated by commas
//
// Whitespace between tokens is ignored. In a U literal the @<start> of a tail
// is optional on input and checked when present.

// Character cursor with positioned errors.
class Cursor {
public:
    explicit Cursor(std::string_view s, std::size_t pos = 0) : s_(s), pos_(pos) {}
    std::size_t pos() const { return pos_; }
    std::string_view text() const { return s_; }
    void skip_ws();
    bool at_end();
    bool peek(std::string_view tok);
    bool eat(std::string_view tok);
    void expect(std::string_view tok);
    [[noreturn]] void fail(const std::string& msg) const;
    Natural nat();
    long long integer();
    Ordinal ordinal();
    // characters up to (not including) the first of `stops` at bracket depth 0
    std::string until(std::string_view stops);

private:
    std::string_view s_;
    std::size_t pos_;
};

std::string format_node(const SymNode& x);
SymNode read_node(const Trees& tr, Cursor& c);
SymNode parse_node(const Trees& tr, std::string_view text);
// U nodes only
UNode parse_u_node(const Trees& tr, std::string_view text);

std::string format_cover(const CoverRule& f);
CoverPtr read_cover(const WedgeEngine& eng, Cursor& c);
CoverPtr parse_cover(const WedgeEngine& eng, std::string_view text);

std::string format_tree(const ExplicitTree& t);
std::shared_ptr<const ExplicitTree> read_tree(Cursor& c);

ExplicitOps::Node read_node(const ExplicitOps& ops, Cursor& c);

template <class Ops>
typename Ops::Node read_ops_node(const Ops& ops, Cursor& c) {
    if constexpr (std::is_same_v<Ops, ExplicitOps>)
        return read_node(ops, c);
    else
        return read_node(ops.trees(), c);
}

template <class Ops>
std::string format_condition(const Ops& ops, const Condition<Ops>& p) {
    std::string out = "{";
    bool first = true;
    for (auto& [k, vs] : p) {
        out += first ? "" : "; ";
        first = false;
        out += ops.str(k) + "=>{";
        bool f2 = true;
        for (auto& v : vs) {
            out += (f2 ? "" : ",") + ops.str(v);
            f2 = false;
        }
        out += "}";
    }
    return out + "}";
}

template <class Ops>
Condition<Ops> parse_condition(const Ops& ops, std::string_view text) {
    Cursor c(text);
    Condition<Ops> p;
    c.expect("{");
    if (!c.eat("}")) {
        do {
            c.skip_ws();
            std::size_t at = c.pos();
            auto k = read_ops_node(ops, c);
            c.expect("=>");
            c.expect("{");
            std::set<typename Ops::Node, typename Ops::Less> vs;
            if (!c.eat("}")) {
                do vs.insert(read_ops_node(ops, c));
                while (c.eat(","));
                c.expect("}");
            }
            if (!p.emplace(std::move(k), std::move(vs)).second) throw ParseError("repeated key", at);
        } while (c.eat(";"));
        c.expect("}");
    }
    if (!c.at_end()) c.fail("unexpected trailing input");
    return p;
}

template <class Ops>
std::vector<Target<Ops>> parse_targets(const Ops& ops, std::string_view text) {
    Cursor c(text);
    std::vector<Target<Ops>> out;
    if (c.at_end()) return out;
    do {
        Target<Ops> t;
        if (c.eat("include(")) {
            t.kind = Target<Ops>::Kind::include;
            t.node = read_ops_node(ops, c);
        } else if (c.eat("reach(")) {
            t.kind = Target<Ops>::Kind::reach;
            t.level = c.ordinal();
        } else {
            c.fail("expected include(...) or reach(...)");
        }
        c.expect(")");
        out.push_back(std::move(t));
    } while (c.eat(","));
    if (!c.at_end()) c.fail("unexpected trailing input");
    return out;
}

template <class Ops>
std::string format_target(const Ops& ops, const Target<Ops>& t) {
    if (t.kind == Target<Ops>::Kind::include) return "include(" + ops.str(t.node) + ")";
    return "reach(" + t.level.str() + ")";
}

} // namespace wb
