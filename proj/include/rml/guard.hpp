#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace rml {

/// A label is a subset of the proposition universe, stored as a bit pattern.
using Label = std::uint32_t;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ordered, duplicate-free universe of proposition names. Labels are subsets
/// encoded with bit i standing for props()[i].
class PropSet {
public:
    PropSet() = default;
    explicit PropSet(std::vector<std::string> props);

    std::size_t size() const { return props_.size(); }
    std::uint32_t label_count() const { return 1u << props_.size(); }
    const std::vector<std::string>& props() const { return props_; }

    /// Index of a proposition name; throws InputError if unknown.
    int index_of(const std::string& name) const;
    bool contains(const std::string& name) const;

    Label bit(const std::string& name) const { return Label{1} << index_of(name); }

    /// Parse "{a,b}" or "{}" into a label.
    Label parse_label(const std::string& text) const;
    std::string format_label(Label l) const;

    bool operator==(const PropSet& other) const { return props_ == other.props_; }

private:
    std::vector<std::string> props_;
};

/// Boolean expression over proposition names: literals, !, &, |, true, false.
struct GuardExpr {
    enum class Kind { True, False, Prop, Not, And, Or };
    Kind kind = Kind::True;
    std::string prop;
    std::vector<GuardExpr> children;

    bool eval(const PropSet& universe, Label l) const;
};

/// Parse a guard; grammar: or := and ('|' and)*, and := unary ('&' unary)*,
/// unary := '!' unary | '(' or ')' | ident | 'true' | 'false'.
/// Throws InputError with the failing position on malformed input.
GuardExpr parse_guard(const std::string& text);

/// All labels of the universe satisfying the guard. Throws InputError when the
/// guard mentions a proposition outside the universe.
std::vector<Label> expand_guard(const GuardExpr& g, const PropSet& universe);

/// Render a single label as a minimal conjunction guard (used when saving
/// machines; "true" for the empty-universe label set).
std::string guard_for_labels(const std::vector<Label>& labels, const PropSet& universe);

} // namespace rml
