#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "tracecast/ui_tree.hpp"

namespace tracecast {

// Shared vocabulary between the simulator, the recorder and generated scripts.
enum class InteractionType { click, long_click, type, select, scroll };
enum class KeyType { action, close };
enum class ScrollDirection { up, down };

std::string_view to_string(InteractionType t);
InteractionType interaction_type_from_string(std::string_view s);
std::string_view to_string(KeyType t);
KeyType key_type_from_string(std::string_view s);
std::string_view to_string(ScrollDirection d);
ScrollDirection scroll_direction_from_string(std::string_view s);

namespace sim {

enum class AccEventKind {
    view_clicked,
    view_long_clicked,
    view_text_changed,
    view_selected,
    view_scrolled,
    window_state_changed,
    window_content_changed,
};

std::string_view to_string(AccEventKind k);

/// Accessibility-style notification. `source` is absent when the window
/// holding the node went inactive as part of the interaction; the payload
/// then still carries the node's class and text.
struct AccEvent {
    AccEventKind kind = AccEventKind::window_content_changed;
    std::optional<NodeId> source;
    std::optional<std::string> class_name;
    std::optional<std::string> text;
    std::optional<int> index;
    std::int64_t timestamp = 0;

    friend bool operator==(AccEvent const&, AccEvent const&) = default;
};

bool is_window_event(AccEventKind k);

struct Click {
    int x = 0;
    int y = 0;
    friend bool operator==(Click const&, Click const&) = default;
};

struct LongClick {
    int x = 0;
    int y = 0;
    friend bool operator==(LongClick const&, LongClick const&) = default;
};

// One keystroke into the focused editable node. "\b" deletes the last char.
struct TypeChar {
    std::string ch;
    friend bool operator==(TypeChar const&, TypeChar const&) = default;
};

// Either a point on a selectable item or an index into the first list.
struct SelectItem {
    std::optional<int> x;
    std::optional<int> y;
    std::optional<int> index;
    friend bool operator==(SelectItem const&, SelectItem const&) = default;
};

struct Scroll {
    ScrollDirection direction = ScrollDirection::down;
    friend bool operator==(Scroll const&, Scroll const&) = default;
};

struct Key {
    KeyType key = KeyType::action;
    friend bool operator==(Key const&, Key const&) = default;
};

struct Gesture {
    std::variant<Click, LongClick, TypeChar, SelectItem, Scroll, Key> action;
    std::int64_t timestamp = 0;

    friend bool operator==(Gesture const&, Gesture const&) = default;
};

// Point carried by the gesture, if any.
std::optional<std::pair<int, int>> gesture_point(Gesture const& g);

void to_json(nlohmann::json& j, AccEvent const& e);
void to_json(nlohmann::json& j, Gesture const& g);
void from_json(nlohmann::json const& j, Gesture& g);

} // namespace sim
} // namespace tracecast
