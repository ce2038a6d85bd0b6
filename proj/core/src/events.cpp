#include "tracecast/events.hpp"

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"

namespace tracecast {

std::string_view to_string(InteractionType t) {
    switch (t) {
    case InteractionType::click:
        return "click";
    case InteractionType::long_click:
        return "longClick";
    case InteractionType::type:
        return "type";
    case InteractionType::select:
        return "select";
    case InteractionType::scroll:
        return "scroll";
    }
    return "click";
}

InteractionType interaction_type_from_string(std::string_view s) {
    if (s == "click") {
        return InteractionType::click;
    }
    if (s == "longClick") {
        return InteractionType::long_click;
    }
    if (s == "type") {
        return InteractionType::type;
    }
    if (s == "select") {
        return InteractionType::select;
    }
    if (s == "scroll") {
        return InteractionType::scroll;
    }
    throw ParseError("unknown interaction type '" + std::string(s) + "'");
}

std::string_view to_string(KeyType t) { return t == KeyType::action ? "action" : "close"; }

KeyType key_type_from_string(std::string_view s) {
    if (s == "action") {
        return KeyType::action;
    }
    if (s == "close") {
        return KeyType::close;
    }
    throw ParseError("unknown key type '" + std::string(s) + "'");
}

std::string_view to_string(ScrollDirection d) { return d == ScrollDirection::up ? "up" : "down"; }

ScrollDirection scroll_direction_from_string(std::string_view s) {
    if (s == "up") {
        return ScrollDirection::up;
    }
    if (s == "down") {
        return ScrollDirection::down;
    }
    throw ParseError("unknown scroll direction '" + std::string(s) + "'");
}

namespace sim {

std::string_view to_string(AccEventKind k) {
    switch (k) {
    case AccEventKind::view_clicked:
        return "VIEW_CLICKED";
    case AccEventKind::view_long_clicked:
        return "VIEW_LONG_CLICKED";
    case AccEventKind::view_text_changed:
        return "VIEW_TEXT_CHANGED";
    case AccEventKind::view_selected:
        return "VIEW_SELECTED";
    case AccEventKind::view_scrolled:
        return "VIEW_SCROLLED";
    case AccEventKind::window_state_changed:
        return "WINDOW_STATE_CHANGED";
    case AccEventKind::window_content_changed:
        return "WINDOW_CONTENT_CHANGED";
    }
    return "?";
}

bool is_window_event(AccEventKind k) {
    return k == AccEventKind::window_state_changed || k == AccEventKind::window_content_changed;
}

std::optional<std::pair<int, int>> gesture_point(Gesture const& g) {
    if (auto const* c = std::get_if<Click>(&g.action)) {
        return std::pair{c->x, c->y};
    }
    if (auto const* c = std::get_if<LongClick>(&g.action)) {
        return std::pair{c->x, c->y};
    }
    if (auto const* s = std::get_if<SelectItem>(&g.action); s && s->x && s->y) {
        return std::pair{*s->x, *s->y};
    }
    return std::nullopt;
}

void to_json(nlohmann::json& j, AccEvent const& e) {
    j = nlohmann::json{{"kind", to_string(e.kind)}, {"timestamp", e.timestamp}};
    if (e.source) {
        j["source"] = *e.source;
    }
    if (e.class_name) {
        j["class"] = *e.class_name;
    }
    if (e.text) {
        j["text"] = *e.text;
    }
    if (e.index) {
        j["index"] = *e.index;
    }
}

void to_json(nlohmann::json& j, Gesture const& g) {
    j = nlohmann::json{{"t", g.timestamp}};
    std::visit(
        [&](auto const& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, Click>) {
                j["type"] = "click";
                j["x"] = a.x;
                j["y"] = a.y;
            } else if constexpr (std::is_same_v<T, LongClick>) {
                j["type"] = "longClick";
                j["x"] = a.x;
                j["y"] = a.y;
            } else if constexpr (std::is_same_v<T, TypeChar>) {
                j["type"] = "typeChar";
                j["ch"] = a.ch;
            } else if constexpr (std::is_same_v<T, SelectItem>) {
                j["type"] = "select";
                if (a.x && a.y) {
                    j["x"] = *a.x;
                    j["y"] = *a.y;
                }
                if (a.index) {
                    j["index"] = *a.index;
                }
            } else if constexpr (std::is_same_v<T, Scroll>) {
                j["type"] = "scroll";
                j["direction"] = tracecast::to_string(a.direction);
            } else {
                j["type"] = "key";
                j["key"] = tracecast::to_string(a.key);
            }
        },
        g.action);
}

void from_json(nlohmann::json const& j, Gesture& g) {
    g.timestamp = j.at("t").get<std::int64_t>();
    auto type = j.at("type").get<std::string>();
    if (type == "click") {
        g.action = Click{j.at("x").get<int>(), j.at("y").get<int>()};
    } else if (type == "longClick") {
        g.action = LongClick{j.at("x").get<int>(), j.at("y").get<int>()};
    } else if (type == "typeChar") {
        g.action = TypeChar{j.at("ch").get<std::string>()};
    } else if (type == "select") {
        SelectItem s;
        if (j.contains("x") && j.contains("y")) {
            s.x = j.at("x").get<int>();
            s.y = j.at("y").get<int>();
        }
        if (j.contains("index")) {
            s.index = j.at("index").get<int>();
        }
        if (!s.index && !s.x) {
            throw ParseError("select gesture needs x/y or index");
        }
        g.action = s;
    } else if (type == "scroll") {
        g.action = Scroll{scroll_direction_from_string(j.value("direction", std::string("down")))};
    } else if (type == "key") {
        g.action = Key{key_type_from_string(j.at("key").get<std::string>())};
    } else {
        throw ParseError("unknown gesture type '" + type + "'");
    }
}

} // namespace sim
} // namespace tracecast
