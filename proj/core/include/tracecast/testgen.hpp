#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tracecast/property.hpp"
#include "tracecast/selector.hpp"
#include "tracecast/trace.hpp"

namespace tracecast::gen {

enum class Operation {
    click,
    long_click,
    type_text,
    select,
    scroll,
    press_ime_action,
    close_keyboard,
    check,
};

std::string_view to_string(Operation op);
Operation operation_from_string(std::string_view s);

/// Element part (selector), action part (op), parameter part (params plus
/// the assertion fields when op == check). Key statements have no selector.
struct ActionStmt {
    std::optional<Selector> selector;
    Operation op = Operation::click;
    std::vector<Scalar> params;
    std::optional<PropertyKind> property;
    std::optional<Selector> related;
    bool negated = false;
    std::optional<int> threshold;
    std::int64_t timestamp = 0; // of the originating action

    friend bool operator==(ActionStmt const&, ActionStmt const&) = default;
};

// Suspends the test, not the app under test.
struct PauseStmt {
    std::int64_t duration_ms = 0;
    friend bool operator==(PauseStmt const&, PauseStmt const&) = default;
};

using Statement = std::variant<ActionStmt, PauseStmt>;

struct TestScript {
    std::string name;          // source trace id
    std::string package_name;
    std::string launch_activity; // set-up
    bool retain_time = false;
    std::vector<Statement> steps;

    friend bool operator==(TestScript const&, TestScript const&) = default;
};

/// One statement per action, except that consecutive type actions on the
/// same selector collapse into one statement with the last text and
/// timestamp. With retain_time, a pause equal to the timestamp gap sits
/// between every two consecutive action statements.
TestScript generate(RecordedTrace const& trace, bool retain_time);

// Canonical JSON text of the script; emit(parse(emit(s))) == emit(s).
std::string emit_ir(TestScript const& script);
// Throws ParseError.
TestScript parse_ir(std::string_view text);

/// Espresso-flavoured Java source for the script.
std::string emit_espresso(TestScript const& script);

// "divide_by_zero" -> "DivideByZero"; never empty, never starts with a digit.
std::string identifier_from(std::string_view name);

std::size_t count_actions(TestScript const& script);
std::size_t count_pauses(TestScript const& script);

} // namespace tracecast::gen
