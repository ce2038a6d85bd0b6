#include "tracecast/expression.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <vector>

#include "tracecast/errors.hpp"

namespace tracecast::sim {

struct Expression::Node {
    enum class Kind { literal, variable, call } kind = Kind::literal;
    std::string text; // literal value, variable name or function name
    std::vector<std::shared_ptr<Node const>> args;
};

namespace {

using NodePtr = std::shared_ptr<Expression::Node const>;

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    NodePtr parse_all() {
        auto node = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) {
            error("trailing input");
        }
        return node;
    }

private:
    [[noreturn]] void error(std::string_view what) const {
        throw ParseError("bad expression '" + std::string(src_) + "' at offset " +
                         std::to_string(pos_) + ": " + std::string(what));
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])) != 0) {
            ++pos_;
        }
    }

    NodePtr parse_expr() {
        skip_ws();
        if (pos_ >= src_.size()) {
            error("unexpected end");
        }
        char c = src_[pos_];
        if (c == '\'' || c == '"') {
            return parse_string(c);
        }
        if (std::isdigit(static_cast<unsigned char>(c)) != 0 || c == '-') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_') {
            return parse_name();
        }
        error("unexpected character");
    }

    NodePtr parse_string(char quote) {
        ++pos_;
        std::string value;
        while (pos_ < src_.size() && src_[pos_] != quote) {
            if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) {
                ++pos_;
            }
            value += src_[pos_++];
        }
        if (pos_ >= src_.size()) {
            error("unterminated string");
        }
        ++pos_;
        auto node = std::make_shared<Expression::Node>();
        node->text = std::move(value);
        return node;
    }

    NodePtr parse_number() {
        std::size_t start = pos_;
        if (src_[pos_] == '-') {
            ++pos_;
        }
        std::size_t digits = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])) != 0) {
            ++pos_;
        }
        if (pos_ == digits) {
            error("expected digits");
        }
        auto node = std::make_shared<Expression::Node>();
        node->text = std::string(src_.substr(start, pos_ - start));
        return node;
    }

    NodePtr parse_name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) != 0 || src_[pos_] == '_')) {
            ++pos_;
        }
        auto node = std::make_shared<Expression::Node>();
        node->text = std::string(src_.substr(start, pos_ - start));
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == '(') {
            ++pos_;
            node->kind = Expression::Node::Kind::call;
            skip_ws();
            if (pos_ < src_.size() && src_[pos_] == ')') {
                ++pos_;
            } else {
                while (true) {
                    node->args.push_back(parse_expr());
                    skip_ws();
                    if (pos_ < src_.size() && src_[pos_] == ',') {
                        ++pos_;
                        continue;
                    }
                    if (pos_ < src_.size() && src_[pos_] == ')') {
                        ++pos_;
                        break;
                    }
                    error("expected ',' or ')'");
                }
            }
            check_arity(*node);
        } else {
            node->kind = Expression::Node::Kind::variable;
        }
        return node;
    }

    void check_arity(Expression::Node const& call) const {
        auto const& f = call.text;
        auto n = call.args.size();
        bool ok = true;
        if (f == "concat" || f == "and" || f == "or") {
            ok = n >= 1;
        } else if (f == "if" || f == "calc") {
            ok = n == 3;
        } else if (f == "eq" || f == "ne" || f == "add" || f == "sub" || f == "mul" ||
                   f == "div" || f == "mod") {
            ok = n == 2;
        } else if (f == "not" || f == "empty") {
            ok = n == 1;
        } else {
            error("unknown function '" + f + "'");
        }
        if (!ok) {
            error("wrong number of arguments to '" + f + "'");
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
};

std::optional<long long> to_int(std::string_view s) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::string arith(std::string_view op, std::string_view a, std::string_view b) {
    auto x = to_int(a);
    auto y = to_int(b);
    if (!x || !y) {
        return "ERROR";
    }
    if (op == "+" || op == "add") {
        return std::to_string(*x + *y);
    }
    if (op == "-" || op == "sub") {
        return std::to_string(*x - *y);
    }
    if (op == "*" || op == "mul") {
        return std::to_string(*x * *y);
    }
    if (*y == 0) {
        return "ERROR";
    }
    if (op == "/" || op == "div") {
        return std::to_string(*x / *y);
    }
    if (op == "%" || op == "mod") {
        return std::to_string(*x % *y);
    }
    return "ERROR";
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

std::string eval(Expression::Node const& node, StateMap const& env) {
    using Kind = Expression::Node::Kind;
    switch (node.kind) {
    case Kind::literal:
        return node.text;
    case Kind::variable: {
        auto it = env.find(node.text);
        return it == env.end() ? std::string{} : it->second;
    }
    case Kind::call:
        break;
    }
    auto const& f = node.text;
    auto arg = [&](std::size_t i) { return eval(*node.args[i], env); };
    if (f == "if") {
        return truthy(arg(0)) ? arg(1) : arg(2);
    }
    if (f == "and") {
        for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (!truthy(arg(i))) {
                return bool_str(false);
            }
        }
        return bool_str(true);
    }
    if (f == "or") {
        for (std::size_t i = 0; i < node.args.size(); ++i) {
            if (truthy(arg(i))) {
                return bool_str(true);
            }
        }
        return bool_str(false);
    }
    if (f == "concat") {
        std::string out;
        for (std::size_t i = 0; i < node.args.size(); ++i) {
            out += arg(i);
        }
        return out;
    }
    if (f == "eq") {
        return bool_str(arg(0) == arg(1));
    }
    if (f == "ne") {
        return bool_str(arg(0) != arg(1));
    }
    if (f == "not") {
        return bool_str(!truthy(arg(0)));
    }
    if (f == "empty") {
        return bool_str(arg(0).empty());
    }
    if (f == "calc") {
        return arith(arg(1), arg(0), arg(2));
    }
    return arith(f, arg(0), arg(1));
}

} // namespace

Expression::Expression() {
    auto node = std::make_shared<Node>();
    root_ = node;
}

Expression Expression::parse(std::string_view source) {
    Expression e;
    e.root_ = Parser(source).parse_all();
    e.source_ = std::string(source);
    return e;
}

std::string Expression::evaluate(StateMap const& env) const { return eval(*root_, env); }

bool truthy(std::string_view value) { return !value.empty() && value != "false"; }

} // namespace tracecast::sim
