#include "wedgebench/query.hpp"

#include <regex>

#include "wedgebench/forcing.hpp"
#include "wedgebench/literals.hpp"
#include "wedgebench/sorgenfrey.hpp"
#include "wedgebench/wedge.hpp"

namespace wb {

namespace {

using json = nlohmann::json;

std::vector<std::string> ords(const std::vector<Ordinal>& v) {
    std::vector<std::string> out;
    for (auto& x : v) out.push_back(x.str());
    return out;
}

Ordinal ord_arg(Cursor& c, const char* what) {
    if (c.at_end()) c.fail(std::string("missing ") + what);
    return c.ordinal();
}

void done(Cursor& c) {
    if (!c.at_end()) c.fail("unexpected trailing input");
}

bool mentions_binary(std::string_view rest) {
    static const std::regex b(R"((^|[^A-Za-z0-9_])b:)");
    return std::regex_search(rest.begin(), rest.end(), b);
}

std::string format_point(const WedgeEngine& eng, const CoverPoint& p) {
    (void)eng;
    if (auto* u = std::get_if<UNode>(&p)) return format_node(SymNode(*u));
    return std::to_string(std::get<ExplicitTree::Id>(p));
}

CoverPoint read_point(const WedgeEngine& eng, const CoverRule& f, Cursor& c) {
    if (f.is_table()) {
        std::size_t at = c.pos();
        long long id = c.integer();
        if (id < 0) throw ParseError("tree ids are non-negative", at);
        return static_cast<ExplicitTree::Id>(id);
    }
    std::size_t at = c.pos();
    SymNode x = read_node(eng.trees(), c);
    if (auto* u = std::get_if<UNode>(&x)) return *u;
    throw ParseError("expected a U node", at);
}

json q_eval_e(Cursor& c, const RunConfig& cfg) {
    (void)cfg;
    Ordinal a = ord_arg(c, "alpha");
    Ordinal x = ord_arg(c, "xi");
    done(c);
    CoherentSystem cs;
    return {{"alpha", a.str()}, {"xi", x.str()}, {"value", to_string(cs.eval(a, x))}};
}

json q_delta_x(Cursor& c, const RunConfig& cfg) {
    Ordinal a = ord_arg(c, "alpha");
    Ordinal b = ord_arg(c, "beta");
    done(c);
    if (b < a) std::swap(a, b);
    Trees tr(std::make_shared<CoherentSystem>(), cfg.budget_range);
    std::set<Ordinal> bound;
    auto de = tr.system().delta(a, b);
    for (auto& xi : de) {
        bound.insert(pair_f(xi, tr.system().eval(a, xi)));
        bound.insert(pair_f(xi, tr.system().eval(b, xi)));
    }
    auto dx = tr.delta_x(a, b);
    bool inside = std::all_of(dx.begin(), dx.end(), [&](const Ordinal& e) { return bound.count(e) != 0; });
    return {{"alpha", a.str()},
            {"beta", b.str()},
            {"delta_e", ords(de)},
            {"bound", ords({bound.begin(), bound.end()})},
            {"delta_x", ords(dx)},
            {"within_bound", inside}};
}

WedgeEngine engine(const RunConfig& cfg) { return WedgeEngine{Trees(std::make_shared<CoherentSystem>(), cfg.budget_range)}; }

json q_is_safe(Cursor& c, const RunConfig& cfg) {
    auto eng = engine(cfg);
    CoverPtr f = read_cover(eng, c);
    CoverPoint x = read_point(eng, *f, c);
    done(c);
    return {{"cover", format_cover(*f)}, {"node", format_point(eng, x)}, {"safe", eng.is_safe(*f, x)}};
}

json q_find_safe(Cursor& c, const RunConfig& cfg) {
    auto eng = engine(cfg);
    CoverPtr f = read_cover(eng, c);
    Ordinal a = ord_arg(c, "level");
    done(c);
    auto s = eng.find_safe_point(*f, a, cfg.budget_enum);
    json j{{"cover", format_cover(*f)}, {"level", a.str()}, {"decided", s.decided}};
    j["point"] = s.point ? json(format_point(eng, *s.point)) : json(nullptr);
    return j;
}

json q_covers_within(Cursor& c, const RunConfig& cfg) {
    auto eng = engine(cfg);
    CoverPtr f = read_cover(eng, c);
    Ordinal a = ord_arg(c, "level");
    done(c);
    return {{"cover", format_cover(*f)}, {"level", a.str()}, {"covered", eng.covers_within(*f, a)}};
}

json q_isolate(Cursor& c, const RunConfig& cfg) {
    (void)cfg;
    std::size_t at = c.pos();
    std::string text = c.until(" \t\n");
    done(c);
    TaggedPoint x;
    try {
        x = parse_point(text);
    } catch (const ParseError& e) {
        throw ParseError("bad point literal", at + e.position());
    }
    auto b = isolating_box(x);
    // the antidiagonal near x: neighbours and points squeezed towards x
    std::vector<TaggedPoint> probe{b.u, b.v, point_below(x), point_above(x)};
    TaggedPoint lo = b.u, hi = b.v;
    for (int i = 0; i < 16; ++i) {
        lo = find_between(lo, x);
        hi = find_between(x, hi);
        probe.push_back(lo);
        probe.push_back(hi);
    }
    std::size_t excluded = 0;
    for (auto& y : probe) excluded += b.contains(y, neg(y)) ? 0 : 1;
    bool holds_x = b.contains(x, neg(x));
    std::string box = "[" + to_string(x) + "," + to_string(b.v) + ") x [" + to_string(neg(x)) + "," + to_string(neg(b.u)) + ")";
    return {{"point", to_string(x)},
            {"box", box},
            {"contains_point", holds_x},
            {"probes", probe.size()},
            {"probes_excluded", excluded},
            {"ok", holds_x && excluded == probe.size()}};
}

template <class Ops>
json condition_json(const Ops& ops, const Condition<Ops>& p) {
    json out = json::array();
    for (auto& [k, vs] : p) {
        json s = json::array();
        for (auto& v : vs) s.push_back(ops.str(v));
        out.push_back({{"key", ops.str(k)}, {"promises", s}});
    }
    return out;
}

template <class Ops>
json simulate_on(const Ops& ops, Cursor& c) {
    std::size_t at = c.pos();
    std::string rest(c.text().substr(at));
    std::vector<Target<Ops>> ts;
    try {
        ts = parse_targets(ops, rest);
    } catch (const ParseError& e) {
        throw ParseError("bad target list", at + e.position());
    }
    auto r = simulate_filter(ops, ts, 64);
    json frag = json::array();
    for (auto& x : r.fragment) frag.push_back(ops.str(x));
    return {{"condition", condition_json(ops, r.condition)},
            {"literal", format_condition(ops, r.condition)},
            {"fragment", frag},
            {"window", ords(r.window)},
            {"steps", r.steps},
            {"checks",
             {{"valid", r.valid},
              {"extends_chain", r.extends_chain},
              {"downward_closed", r.downward_closed},
              {"successors_promised", r.successors_promised},
              {"targets_met", r.targets_met}}},
            {"failures", r.failures},
            {"ok", r.ok()}};
}

json q_simulate(Cursor& c, const RunConfig& cfg) {
    if (mentions_binary(c.text().substr(c.pos()))) return simulate_on(ExplicitOps::binary_fixture(), c);
    return simulate_on(SymOps{Trees(std::make_shared<CoherentSystem>(), cfg.budget_range)}, c);
}

template <class Ops>
json extend_on(const Ops& ops, Cursor& c) {
    std::size_t at = c.pos();
    std::string ctext = c.until(" \t\n");
    Condition<Ops> p;
    try {
        p = parse_condition(ops, ctext);
    } catch (const ParseError& e) {
        throw ParseError("bad condition", at + e.position());
    }
    json j{{"from", format_condition(ops, p)}};
    Condition<Ops> r;
    if (c.eat("above")) {
        Ordinal a = ord_arg(c, "level");
        done(c);
        auto e = extend_above(ops, p, a);
        r = e.condition;
        j["mode"] = "above";
        j["level"] = a.str();
        j["key"] = ops.str(e.key);
        j["unchanged"] = e.unchanged;
    } else {
        auto x = read_ops_node(ops, c);
        done(c);
        r = extend_to_include(ops, p, x);
        j["mode"] = "include";
        j["node"] = ops.str(x);
    }
    j["condition"] = condition_json(ops, r);
    j["literal"] = format_condition(ops, r);
    j["valid"] = is_valid_condition(ops, r);
    j["extends"] = cond_leq(r, p);
    return j;
}

json q_extend(Cursor& c, const RunConfig& cfg) {
    if (mentions_binary(c.text().substr(c.pos()))) return extend_on(ExplicitOps::binary_fixture(), c);
    return extend_on(SymOps{Trees(std::make_shared<CoherentSystem>(), cfg.budget_range)}, c);
}

using Handler = json (*)(Cursor&, const RunConfig&);

const std::vector<std::pair<std::string, Handler>> kCommands = {
    {"eval-e", q_eval_e},   {"delta-x", q_delta_x},     {"is-safe", q_is_safe},           {"find-safe", q_find_safe},
    {"covers-within", q_covers_within}, {"isolate", q_isolate}, {"simulate", q_simulate}, {"extend", q_extend},
};

} // namespace

nlohmann::json run_query(std::string_view expr, const RunConfig& cfg) {
    validate(cfg);
    Cursor c(expr);
    std::string cmd = c.until(" \t\n");
    for (auto& [name, h] : kCommands)
        if (name == cmd) {
            json j = h(c, cfg);
            j["command"] = cmd;
            j["expr"] = std::string(expr);
            j["version"] = version_string();
            return j;
        }
    throw ParseError("unknown command '" + cmd + "'", 0);
}

} // namespace wb
