#include "rml/guard.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace rml {

PropSet::PropSet(std::vector<std::string> props) : props_(std::move(props)) {
    if (props_.size() > 20)
        throw InputError("proposition universe too large: " + std::to_string(props_.size()));
    for (std::size_t i = 0; i < props_.size(); ++i)
        for (std::size_t j = i + 1; j < props_.size(); ++j)
            if (props_[i] == props_[j])
                throw InputError("duplicate proposition: " + props_[i]);
}

int PropSet::index_of(const std::string& name) const {
    auto it = std::find(props_.begin(), props_.end(), name);
    if (it == props_.end())
        throw InputError("unknown proposition: " + name);
    return static_cast<int>(it - props_.begin());
}

bool PropSet::contains(const std::string& name) const {
    return std::find(props_.begin(), props_.end(), name) != props_.end();
}

Label PropSet::parse_label(const std::string& text) const {
    std::string s = text;
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    if (s.size() < 2 || s.front() != '{' || s.back() != '}')
        throw InputError("label must be brace-enclosed: " + text);
    s = s.substr(1, s.size() - 2);
    Label l = 0;
    if (s.empty()) return l;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        l |= bit(item);
    return l;
}

std::string PropSet::format_label(Label l) const {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < props_.size(); ++i) {
        if (l & (Label{1} << i)) {
            if (!first) out += ",";
            out += props_[i];
            first = false;
        }
    }
    out += "}";
    return out;
}

bool GuardExpr::eval(const PropSet& universe, Label l) const {
    switch (kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Prop: return (l & (Label{1} << universe.index_of(prop))) != 0;
    case Kind::Not: return !children[0].eval(universe, l);
    case Kind::And:
        return std::all_of(children.begin(), children.end(),
                           [&](const GuardExpr& c) { return c.eval(universe, l); });
    case Kind::Or:
        return std::any_of(children.begin(), children.end(),
                           [&](const GuardExpr& c) { return c.eval(universe, l); });
    }
    return false;
}

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw InputError("guard parse error at position " + std::to_string(pos) + ": " + what +
                         " in \"" + text + "\"");
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    GuardExpr parse_or() {
        GuardExpr e = parse_and();
        while (eat('|')) {
            GuardExpr rhs = parse_and();
            if (e.kind == GuardExpr::Kind::Or) {
                e.children.push_back(std::move(rhs));
            } else {
                GuardExpr o;
                o.kind = GuardExpr::Kind::Or;
                o.children.push_back(std::move(e));
                o.children.push_back(std::move(rhs));
                e = std::move(o);
            }
        }
        return e;
    }

    GuardExpr parse_and() {
        GuardExpr e = parse_unary();
        while (eat('&')) {
            GuardExpr rhs = parse_unary();
            if (e.kind == GuardExpr::Kind::And) {
                e.children.push_back(std::move(rhs));
            } else {
                GuardExpr a;
                a.kind = GuardExpr::Kind::And;
                a.children.push_back(std::move(e));
                a.children.push_back(std::move(rhs));
                e = std::move(a);
            }
        }
        return e;
    }

    GuardExpr parse_unary() {
        skip_ws();
        if (eat('!')) {
            GuardExpr n;
            n.kind = GuardExpr::Kind::Not;
            n.children.push_back(parse_unary());
            return n;
        }
        if (eat('(')) {
            GuardExpr e = parse_or();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == start) fail("expected identifier");
        std::string name = text.substr(start, pos - start);
        GuardExpr e;
        if (name == "true") {
            e.kind = GuardExpr::Kind::True;
        } else if (name == "false") {
            e.kind = GuardExpr::Kind::False;
        } else {
            e.kind = GuardExpr::Kind::Prop;
            e.prop = name;
        }
        return e;
    }
};

void collect_props(const GuardExpr& g, std::vector<std::string>& out) {
    if (g.kind == GuardExpr::Kind::Prop) out.push_back(g.prop);
    for (const GuardExpr& c : g.children) collect_props(c, out);
}

} // namespace

GuardExpr parse_guard(const std::string& text) {
    Parser p{text};
    GuardExpr e = p.parse_or();
    p.skip_ws();
    if (p.pos != text.size()) p.fail("trailing input");
    return e;
}

std::vector<Label> expand_guard(const GuardExpr& g, const PropSet& universe) {
    std::vector<std::string> used;
    collect_props(g, used);
    for (const std::string& name : used)
        if (!universe.contains(name))
            throw InputError("unknown proposition: " + name);
    std::vector<Label> out;
    for (Label l = 0; l < universe.label_count(); ++l)
        if (g.eval(universe, l)) out.push_back(l);
    return out;
}

std::string guard_for_labels(const std::vector<Label>& labels, const PropSet& universe) {
    if (labels.empty()) return "false";
    if (labels.size() == universe.label_count()) return "true";
    std::string out;
    for (Label l : labels) {
        std::string term;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            if (!term.empty()) term += " & ";
            if (l & (Label{1} << i))
                term += universe.props()[i];
            else
                term += "!" + universe.props()[i];
        }
        if (universe.size() == 0) term = "true";
        if (!out.empty()) out += " | ";
        if (labels.size() > 1 && universe.size() > 1)
            out += "(" + term + ")";
        else
            out += term;
    }
    return out;
}

} // namespace rml
