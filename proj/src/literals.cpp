#include "wedgebench/literals.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace wb {

// ---- cursor

void Cursor::skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
}

bool Cursor::at_end() {
    skip_ws();
    return pos_ == s_.size();
}

bool Cursor::peek(std::string_view tok) {
    skip_ws();
    return s_.substr(pos_, tok.size()) == tok;
}

bool Cursor::eat(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
}

void Cursor::expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
}

void Cursor::fail(const std::string& msg) const { throw ParseError(msg, pos_); }

Natural Cursor::nat() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a natural number");
    return Natural(std::string(s_.substr(start, pos_ - start)));
}

long long Cursor::integer() {
    skip_ws();
    bool neg = false;
    if (pos_ < s_.size() && s_[pos_] == '-') {
        neg = true;
        ++pos_;
    }
    std::size_t at = pos_;
    Natural n = nat();
    if (n > Natural(std::numeric_limits<long long>::max())) throw ParseError("integer out of range", at);
    auto v = static_cast<long long>(n);
    return neg ? -v : v;
}

Ordinal Cursor::ordinal() {
    skip_ws();
    return Ordinal::parse_prefix(s_, pos_);
}

std::string Cursor::until(std::string_view stops) {
    skip_ws();
    std::size_t start = pos_;
    int depth = 0;
    while (pos_ < s_.size()) {
        char ch = s_[pos_];
        if (depth == 0 && stops.find(ch) != std::string_view::npos) break;
        if (ch == '(' || ch == '{' || ch == '[') ++depth;
        if (ch == ')' || ch == '}' || ch == ']') --depth;
        ++pos_;
    }
    std::string out(s_.substr(start, pos_ - start));
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
}

// ---- nodes

namespace {

std::string format_t(const TNode& t) {
    std::string out = "t:" + t.height.str() + ":{";
    for (std::size_t i = 0; i < t.flips.size(); ++i) out += (i ? "," : "") + t.flips[i].str();
    out += "}:[";
    for (bool b : t.tail) out += b ? '1' : '0';
    return out + "]";
}

template <class F>
auto located(std::size_t at, F make) {
    try {
        return make();
    } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " (literal at position " + std::to_string(at) + ")");
    }
}

TNode read_t(const Trees& tr, Cursor& c) {
    c.skip_ws();
    std::size_t at = c.pos();
    c.expect("t:");
    Ordinal h = c.ordinal();
    c.expect(":");
    c.expect("{");
    std::vector<Ordinal> flips;
    if (!c.eat("}")) {
        do flips.push_back(c.ordinal());
        while (c.eat(","));
        c.expect("}");
    }
    c.expect(":");
    c.expect("[");
    std::vector<bool> tail;
    while (!c.eat("]")) {
        if (c.eat(",")) continue;
        if (c.eat("0")) tail.push_back(false);
        else if (c.eat("1")) tail.push_back(true);
        else c.fail("expected a bit");
    }
    return located(at, [&] { return tr.t_node(h, flips, tail); });
}

} // namespace

std::string format_node(const SymNode& x) {
    if (auto te = std::get_if<TeNode>(&x)) {
        std::string out = "te:" + te->height.str() + ":{";
        bool first = true;
        for (auto& [xi, v] : te->delta) {
            out += (first ? "" : ",") + xi.str() + "=" + to_string(v);
            first = false;
        }
        return out + "}";
    }
    if (auto t = std::get_if<TNode>(&x)) return format_t(*t);
    const auto& u = std::get<UNode>(x);
    std::string out = "u:[";
    Ordinal p;
    for (std::size_t i = 0; i < u.comps.size(); ++i) {
        if (i) out += ",";
        const auto& c = u.comps[i];
        if (c.is_digit()) {
            out += "d" + to_string(c.digit);
            p = p.succ();
        } else {
            out += "tail(" + format_t(*c.tail) + ")@" + p.str();
            p = c.tail->height;
        }
    }
    return out + "]";
}

SymNode read_node(const Trees& tr, Cursor& c) {
    c.skip_ws();
    std::size_t at = c.pos();
    if (c.eat("te:")) {
        Ordinal h = c.ordinal();
        std::map<Ordinal, Natural> delta;
        if (c.eat(":")) {
            c.expect("{");
            if (!c.eat("}")) {
                do {
                    c.skip_ws();
                    std::size_t kat = c.pos();
                    Ordinal xi = c.ordinal();
                    c.expect("=");
                    Natural v = c.nat();
                    if (!delta.emplace(xi, v).second) throw ParseError("repeated coordinate", kat);
                } while (c.eat(","));
                c.expect("}");
            }
        }
        return located(at, [&] { return tr.te_node(h, delta); });
    }
    if (c.peek("t:")) return read_t(tr, c);
    if (c.eat("u:")) {
        c.expect("[");
        std::vector<UComp> comps;
        Ordinal p;
        if (!c.eat("]")) {
            do {
                if (c.eat("d")) {
                    comps.push_back(UComp::make_digit(c.nat()));
                    p = p.succ();
                } else if (c.eat("tail(")) {
                    TNode t = read_t(tr, c);
                    c.expect(")");
                    if (c.eat("@")) {
                        std::size_t sat = c.pos();
                        Ordinal s = c.ordinal();
                        if (s != p) throw ParseError("tail starts at " + p.str() + ", not " + s.str(), sat);
                    }
                    if (!(p < t.height)) throw ParseError("tail ends at or before its start", c.pos());
                    p = t.height;
                    comps.push_back(UComp::make_tail(std::move(t)));
                } else {
                    c.fail("expected d<nat> or tail(...)");
                }
            } while (c.eat(","));
            c.expect("]");
        }
        return located(at, [&] { return tr.u_node(comps); });
    }
    c.fail("expected a node literal (te:, t: or u:)");
}

SymNode parse_node(const Trees& tr, std::string_view text) {
    Cursor c(text);
    SymNode x = read_node(tr, c);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return x;
}

UNode parse_u_node(const Trees& tr, std::string_view text) {
    SymNode x = parse_node(tr, text);
    if (auto u = std::get_if<UNode>(&x)) return *u;
    throw DomainError("expected a U node, got a " + std::string(to_string(family_of(x))) + " node");
}

ExplicitOps::Node read_node(const ExplicitOps& ops, Cursor& c) {
    c.skip_ws();
    std::size_t at = c.pos();
    if (c.eat("b:")) {
        std::string s = "b:";
        while (c.pos() < c.text().size() && (c.text()[c.pos()] == '0' || c.text()[c.pos()] == '1')) {
            s += c.text()[c.pos()];
            c.eat(std::string(1, c.text()[c.pos()]));
        }
        return located(at, [&] { return ops.parse(s); });
    }
    long long id = c.integer();
    return located(at, [&] { return ops.parse(std::to_string(id)); });
}

// ---- trees and covers

std::string format_tree(const ExplicitTree& t) {
    std::string out = "tree{";
    bool first = true;
    for (auto x : t.nodes()) {
        out += (first ? "" : ", ") + std::to_string(x) + " ";
        auto p = t.parent(x);
        out += p ? std::to_string(*p) : std::string("-");
        first = false;
    }
    return out + "}";
}

std::shared_ptr<const ExplicitTree> read_tree(Cursor& c) {
    c.skip_ws();
    std::size_t at = c.pos();
    if (c.eat("complete(")) {
        long long a = c.integer();
        c.expect(",");
        long long l = c.integer();
        c.expect(")");
        if (a < 1 || l < 1 || a > 16 || l > 20) throw ParseError("complete tree shape out of range", at);
        return std::make_shared<const ExplicitTree>(ExplicitTree::complete(static_cast<int>(a), static_cast<int>(l)));
    }
    if (c.eat("tree{")) {
        std::string text;
        if (!c.eat("}")) {
            do {
                text += std::to_string(c.integer()) + " ";
                if (c.eat("-")) text += "-\n";
                else text += std::to_string(c.integer()) + "\n";
            } while (c.eat(","));
            c.expect("}");
        }
        return located(at, [&] { return std::make_shared<const ExplicitTree>(ExplicitTree::parse(text)); });
    }
    if (c.eat("file(")) {
        std::string path = c.until(")");
        c.expect(")");
        return located(at, [&] { return std::make_shared<const ExplicitTree>(ExplicitTree::load(path)); });
    }
    c.fail("expected complete(...), tree{...} or file(...)");
}

namespace {

std::string format_subtree(const Subtree& s) {
    switch (s.kind) {
    case Subtree::Kind::t_in_u: return "T-in-U";
    case Subtree::Kind::truncated: return "truncated(" + format_subtree(*s.base) + ", " + s.height.str() + ")";
    case Subtree::Kind::safe: return "safe(" + format_cover(*s.cover) + ")";
    }
    return "?";
}

SubtreePtr read_subtree(const WedgeEngine& eng, Cursor& c) {
    if (c.eat("T-in-U")) return Subtree::t_in_u();
    if (c.eat("truncated(")) {
        auto base = read_subtree(eng, c);
        c.expect(",");
        Ordinal h = c.ordinal();
        c.expect(")");
        return Subtree::truncated(std::move(base), std::move(h));
    }
    if (c.eat("safe(")) {
        c.skip_ws();
        std::size_t at = c.pos();
        auto f = read_cover(eng, c);
        c.expect(")");
        return located(at, [&] { return Subtree::safe(std::move(f)); });
    }
    c.fail("expected T-in-U, truncated(...) or safe(...)");
}

UNode read_u(const Trees& tr, Cursor& c) {
    c.skip_ws();
    std::size_t at = c.pos();
    SymNode x = read_node(tr, c);
    if (auto u = std::get_if<UNode>(&x)) return *u;
    throw ParseError("expected a U node", at);
}

} // namespace

std::string format_cover(const CoverRule& f) {
    return std::visit(
        [](const auto& r) -> std::string {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, SubtreeCover>) {
                return "subtree(" + format_subtree(*r.s) + ")";
            } else if constexpr (std::is_same_v<R, PatchedCover>) {
                std::string out = "patched(" + format_cover(*r.base);
                for (auto& [k, vs] : r.table) {
                    out += "; " + format_node(k) + "=>{";
                    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + format_node(vs[i]);
                    out += "}";
                }
                return out + ")";
            } else {
                std::string out = "table(" + format_tree(*r.tree);
                for (auto& [k, vs] : r.f) {
                    out += "; " + std::to_string(k) + "=>{";
                    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? "," : "") + std::to_string(vs[i]);
                    out += "}";
                }
                return out + ")";
            }
        },
        f.rule);
}

CoverPtr read_cover(const WedgeEngine& eng, Cursor& c) {
    c.skip_ws();
    std::size_t at = c.pos();
    if (c.eat("subtree(")) {
        auto s = read_subtree(eng, c);
        c.expect(")");
        return subtree_cover(std::move(s));
    }
    if (c.eat("patched(")) {
        auto base = read_cover(eng, c);
        UTable table;
        while (c.eat(";")) {
            c.skip_ws();
            std::size_t kat = c.pos();
            UNode k = read_u(eng.trees(), c);
            c.expect("=>");
            c.expect("{");
            std::vector<UNode> vs;
            if (!c.eat("}")) {
                do vs.push_back(read_u(eng.trees(), c));
                while (c.eat(","));
                c.expect("}");
            }
            if (!table.emplace(std::move(k), std::move(vs)).second) throw ParseError("repeated key", kat);
        }
        c.expect(")");
        return located(at, [&] { return eng.patched(std::move(base), std::move(table)); });
    }
    if (c.eat("table(")) {
        auto tree = read_tree(c);
        std::map<ExplicitTree::Id, std::vector<ExplicitTree::Id>> f;
        while (c.eat(";")) {
            c.skip_ws();
            std::size_t kat = c.pos();
            auto k = c.integer();
            c.expect("=>");
            c.expect("{");
            std::vector<ExplicitTree::Id> vs;
            if (!c.eat("}")) {
                do vs.push_back(c.integer());
                while (c.eat(","));
                c.expect("}");
            }
            if (!f.emplace(k, std::move(vs)).second) throw ParseError("repeated key", kat);
        }
        c.expect(")");
        return located(at, [&] { return table_cover(std::move(tree), std::move(f)); });
    }
    c.fail("expected subtree(...), patched(...) or table(...)");
}

CoverPtr parse_cover(const WedgeEngine& eng, std::string_view text) {
    Cursor c(text);
    auto f = read_cover(eng, c);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return f;
}

} // namespace wb
