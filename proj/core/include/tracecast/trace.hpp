#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "tracecast/events.hpp"
#include "tracecast/property.hpp"
#include "tracecast/selector.hpp"

namespace tracecast {

using Scalar = std::variant<bool, std::int64_t, double, std::string>;

struct InteractionDef {
    InteractionType type = InteractionType::click;
    Selector selector;
    std::int64_t timestamp = 0;
    // type: the field text after the keystroke; scroll: the direction.
    std::vector<Scalar> props;

    friend bool operator==(InteractionDef const&, InteractionDef const&) = default;
};

struct AssertionDef {
    PropertyKind property = PropertyKind::displayed;
    Selector selector;
    std::int64_t timestamp = 0;
    std::vector<Scalar> values;     // unary properties with a value (text)
    std::optional<Selector> related; // relational properties only
    bool negated = false;
    std::optional<int> threshold;    // visible-area percent, displayed only

    friend bool operator==(AssertionDef const&, AssertionDef const&) = default;
};

struct KeyDef {
    KeyType key = KeyType::action;
    std::int64_t timestamp = 0;

    friend bool operator==(KeyDef const&, KeyDef const&) = default;
};

using Action = std::variant<InteractionDef, AssertionDef, KeyDef>;

std::int64_t timestamp_of(Action const& a);

struct RecordedTrace {
    std::string name;
    std::string package_name;
    std::string main_activity;
    std::vector<Action> actions;

    friend bool operator==(RecordedTrace const&, RecordedTrace const&) = default;
};

// Throws ParseError describing the first violated trace invariant.
void check_well_formed(InteractionDef const& a);
void check_well_formed(AssertionDef const& a);
void check_well_formed(RecordedTrace const& t);

std::string to_display(Scalar const& s);

void to_json(nlohmann::json& j, AssertionDef const& a);
void from_json(nlohmann::json const& j, AssertionDef& a);
void to_json(nlohmann::json& j, Action const& a);
void from_json(nlohmann::json const& j, Action& a);
void to_json(nlohmann::json& j, RecordedTrace const& t);
void from_json(nlohmann::json const& j, RecordedTrace& t);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_trace(RecordedTrace const& t);
// Throws ParseError.
RecordedTrace parse_trace(std::string_view text);

} // namespace tracecast

// Scalar is a plain std::variant, so ADL cannot find tracecast overloads.
namespace nlohmann {
template <>
struct adl_serializer<tracecast::Scalar> {
    static void to_json(json& j, tracecast::Scalar const& s);
    static void from_json(json const& j, tracecast::Scalar& s);
};
} // namespace nlohmann
