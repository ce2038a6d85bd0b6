#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace tracecast::sim {

using StateMap = std::map<std::string, std::string, std::less<>>;

/// String-valued formula over app state, used by transition effects.
///
///   expr := 'string' | "string" | integer | name | name '(' [expr {',' expr}] ')'
///
/// A bare name reads a state variable (missing variables read as ""). Calls
/// go to a fixed set of builtins: concat, if, eq, ne, not, and, or, empty,
/// add, sub, mul, div, mod, calc. Arithmetic works on 64-bit integers and
/// yields "ERROR" on non-numeric operands or division by zero.
class Expression {
public:
    Expression();

    /// Throws ParseError.
    static Expression parse(std::string_view source);

    std::string evaluate(StateMap const& env) const;
    std::string const& source() const { return source_; }

    struct Node;

private:
    std::shared_ptr<Node const> root_;
    std::string source_;
};

bool truthy(std::string_view value);

} // namespace tracecast::sim
