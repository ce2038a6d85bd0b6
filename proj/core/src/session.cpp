#include "tracecast/session.hpp"

#include <algorithm>

#include "tracecast/errors.hpp"
#include "tracecast/ui_query.hpp"

namespace tracecast::sim {

namespace {

bool closes_window(Transition const& t) {
    return std::any_of(t.effects.begin(), t.effects.end(),
                       [](Effect const& e) { return e.kind == Effect::Kind::close_window; });
}

UiNode const* first_scrollable(UiNode const& node) {
    if (node.flags.scrollable) {
        return &node;
    }
    for (auto const& child : node.children) {
        if (auto const* hit = first_scrollable(child)) {
            return hit;
        }
    }
    return nullptr;
}

UiNode const* first_list(UiNode const& node) {
    for (auto const& child : node.children) {
        if (child.flags.selectable) {
            return &node;
        }
    }
    for (auto const& child : node.children) {
        if (auto const* hit = first_list(child)) {
            return hit;
        }
    }
    return nullptr;
}

} // namespace

std::string_view to_string(PerformStatus s) {
    switch (s) {
    case PerformStatus::ok:
        return "ok";
    case PerformStatus::not_found:
        return "not found";
    case PerformStatus::ambiguous:
        return "ambiguous";
    case PerformStatus::off_screen:
        return "off screen";
    case PerformStatus::not_actionable:
        return "not actionable";
    }
    return "?";
}

Session::Session(std::shared_ptr<AppSpec const> app, DeviceProfile device)
    : app_(std::move(app)), device_(std::move(device)), state_(app_->initial_state) {
    validate(device_);
}

std::string const& Session::current_screen() const {
    if (windows_.empty()) {
        throw SimulationError("session not launched");
    }
    return windows_.back().screen;
}

std::vector<AccEvent> Session::launch(std::int64_t timestamp) {
    return launch(app_->main_activity, timestamp);
}

std::vector<AccEvent> Session::launch(std::string const& activity, std::int64_t timestamp) {
    app_->screen(activity);
    clock_ = std::max(clock_, timestamp);
    windows_ = {Window{activity, 0}};
    focused_.reset();
    rerender();
    std::vector<AccEvent> out;
    emit(make_event(AccEventKind::window_state_changed, tree_.root), out);
    return out;
}

void Session::advance_clock(std::int64_t ms) { clock_ += std::max<std::int64_t>(ms, 0); }

void Session::rerender() {
    if (windows_.empty()) {
        return;
    }
    auto const& top = windows_.back();
    RenderOptions options{focused_, text_overrides_, top.scroll_offset_px};
    tree_ = render(*app_, top.screen, state_, device_, options);
    if (focused_ && !find_node(tree_, *focused_)) {
        focused_.reset();
    }
}

void Session::emit(AccEvent event, std::vector<AccEvent>& out) {
    if (event_sink_) {
        event_sink_(event, tree_);
    }
    out.push_back(std::move(event));
}

AccEvent Session::make_event(AccEventKind kind, UiNode const& node) const {
    AccEvent e;
    e.kind = kind;
    e.source = node.id;
    e.class_name = node.class_name;
    e.text = node.text;
    e.timestamp = clock_;
    return e;
}

void Session::emit_window_change(std::vector<Window> const& windows_before,
                                 UiTree const& tree_before, std::vector<AccEvent>& out) {
    bool stack_changed = windows_before.size() != windows_.size() ||
                         !std::equal(windows_before.begin(), windows_before.end(),
                                     windows_.begin(), [](Window const& a, Window const& b) {
                                         return a.screen == b.screen;
                                     });
    if (stack_changed) {
        emit(make_event(AccEventKind::window_state_changed, tree_.root), out);
    } else if (!(tree_ == tree_before)) {
        emit(make_event(AccEventKind::window_content_changed, tree_.root), out);
    }
}

std::vector<Transition const*> Session::matching(TriggerKind trigger,
                                                 NodeId const& node_id) const {
    std::vector<Transition const*> out;
    auto const* parent = parent_of(tree_, node_id);
    for (auto const& t : app_->transitions) {
        if (t.screen != current_screen() || t.trigger != trigger) {
            continue;
        }
        if (t.target_node == node_id ||
            (trigger == TriggerKind::select && parent && t.target_node == parent->id)) {
            out.push_back(&t);
        }
    }
    return out;
}

void Session::apply(Transition const& t, StateMap const& extras) {
    for (auto const& effect : t.effects) {
        switch (effect.kind) {
        case Effect::Kind::assign: {
            StateMap env = state_;
            for (auto const& [k, v] : extras) {
                env[k] = v;
            }
            state_[effect.name] = effect.value.evaluate(env);
            break;
        }
        case Effect::Kind::go_to:
            windows_.back() = Window{effect.name, 0};
            break;
        case Effect::Kind::show_dialog:
            windows_.push_back(Window{effect.name, 0});
            break;
        case Effect::Kind::close_window:
            if (windows_.size() > 1) {
                windows_.pop_back();
            }
            break;
        }
    }
}

std::vector<AccEvent> Session::activate(TriggerKind trigger, NodeId node_id,
                                        AccEventKind event_kind) {
    std::vector<AccEvent> out;
    auto const* node = find_node(tree_, node_id);
    if (!node) {
        return out;
    }
    auto event = make_event(event_kind, *node);
    StateMap extras{{"_text", node->text.value_or("")}};
    if (auto const* parent = parent_of(tree_, node_id)) {
        for (std::size_t i = 0; i < parent->children.size(); ++i) {
            if (parent->children[i].id == node_id) {
                extras["_index"] = std::to_string(i);
                if (event_kind == AccEventKind::view_selected) {
                    event.index = static_cast<int>(i);
                }
            }
        }
    }
    bool focus = node->flags.focusable;

    auto transitions = matching(trigger, node_id);
    auto windows_before = windows_;
    auto tree_before = tree_;
    bool closing = std::any_of(transitions.begin(), transitions.end(),
                               [](Transition const* t) { return closes_window(*t); });

    if (!closing) {
        emit(event, out);
        if (focus) {
            focused_ = node_id;
        }
    }
    for (auto const* t : transitions) {
        apply(*t, extras);
    }
    rerender();
    if (closing) {
        // The source window is gone; only the payload identifies the node.
        event.source.reset();
        emit(event, out);
    }
    emit_window_change(windows_before, tree_before, out);
    return out;
}

void Session::set_text(NodeId const& node_id, std::string text) {
    auto const& screen = app_->screen(current_screen());
    if (auto it = screen.bindings.find(node_id); it != screen.bindings.end()) {
        state_[it->second] = std::move(text);
        text_overrides_.erase(node_id);
    } else {
        text_overrides_[node_id] = std::move(text);
    }
}

std::vector<AccEvent> Session::type_into(NodeId node_id, std::string new_text) {
    std::vector<AccEvent> out;
    focused_ = node_id;
    set_text(node_id, std::move(new_text));
    rerender();
    auto const* node = find_node(tree_, node_id);
    emit(make_event(AccEventKind::view_text_changed, *node), out);
    emit(make_event(AccEventKind::window_content_changed, tree_.root), out);
    return out;
}

std::vector<AccEvent> Session::scroll(ScrollDirection direction) {
    std::vector<AccEvent> out;
    auto& window = windows_.back();
    RenderOptions flat{focused_, text_overrides_, 0};
    int limit = max_scroll_offset(render(*app_, window.screen, state_, device_, flat));
    int step = std::max(1, device_.height_px / 2);
    int next = direction == ScrollDirection::down ? std::min(limit, window.scroll_offset_px + step)
                                                  : std::max(0, window.scroll_offset_px - step);
    if (next == window.scroll_offset_px) {
        return out;
    }
    auto const* target = first_scrollable(tree_.root);
    auto event = make_event(AccEventKind::view_scrolled, target ? *target : tree_.root);
    event.text = std::string(tracecast::to_string(direction));
    window.scroll_offset_px = next;
    emit(std::move(event), out);
    rerender();
    emit(make_event(AccEventKind::window_content_changed, tree_.root), out);
    return out;
}

std::vector<AccEvent> Session::dispatch(Gesture const& gesture) {
    if (windows_.empty()) {
        throw SimulationError("session not launched");
    }
    clock_ = std::max(clock_, gesture.timestamp);
    return std::visit(
        [&](auto const& g) -> std::vector<AccEvent> {
            using T = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<T, Click>) {
                auto hit = hit_test(tree_, g.x, g.y);
                if (!hit) {
                    return {};
                }
                auto const* node = find_node(tree_, *hit);
                if (!node->flags.clickable || !node->flags.enabled) {
                    return {};
                }
                return activate(TriggerKind::click, *hit, AccEventKind::view_clicked);
            } else if constexpr (std::is_same_v<T, LongClick>) {
                auto hit = hit_test(tree_, g.x, g.y);
                if (!hit) {
                    return {};
                }
                auto const* node = find_node(tree_, *hit);
                if (!node->flags.long_clickable || !node->flags.enabled) {
                    return {};
                }
                return activate(TriggerKind::long_click, *hit, AccEventKind::view_long_clicked);
            } else if constexpr (std::is_same_v<T, TypeChar>) {
                if (!focused_) {
                    return {};
                }
                auto const* node = find_node(tree_, *focused_);
                if (!node || !node->flags.editable || !node->flags.enabled) {
                    return {};
                }
                auto text = node->text.value_or("");
                if (g.ch == "\b") {
                    if (text.empty()) {
                        return {};
                    }
                    text.pop_back();
                } else {
                    text += g.ch;
                }
                return type_into(node->id, std::move(text));
            } else if constexpr (std::is_same_v<T, SelectItem>) {
                NodeId target;
                if (g.x && g.y) {
                    auto hit = hit_test(tree_, *g.x, *g.y);
                    if (!hit) {
                        return {};
                    }
                    target = *hit;
                } else {
                    auto const* list = first_list(tree_.root);
                    if (!list || *g.index < 0 ||
                        static_cast<std::size_t>(*g.index) >= list->children.size()) {
                        return {};
                    }
                    target = list->children[static_cast<std::size_t>(*g.index)].id;
                }
                auto const* node = find_node(tree_, target);
                if (!node->flags.selectable || !node->flags.enabled) {
                    return {};
                }
                return activate(TriggerKind::select, target, AccEventKind::view_selected);
            } else if constexpr (std::is_same_v<T, Scroll>) {
                return scroll(g.direction);
            } else {
                return press_key(g.key);
            }
        },
        gesture.action);
}

std::vector<AccEvent> Session::press_key(KeyType key) {
    if (key_sink_) {
        key_sink_(key, clock_);
    }
    std::vector<AccEvent> out;
    auto windows_before = windows_;
    auto tree_before = tree_;
    if (key == KeyType::close) {
        focused_.reset();
    } else if (focused_) {
        for (auto const* t : matching(TriggerKind::ime_action, *focused_)) {
            apply(*t, {{"_text", find_node(tree_, *focused_)->text.value_or("")}});
        }
    }
    rerender();
    // No event for the key itself; only the UI change it caused, if any.
    emit_window_change(windows_before, tree_before, out);
    return out;
}

std::vector<AccEvent> Session::programmatic_text_change(Selector const& selector,
                                                        std::string text) {
    auto m = evaluate_selector(tree_, selector);
    if (!m.is_unique()) {
        throw SimulationError("programmatic text change: " + describe(selector) + " is " +
                              describe(m));
    }
    auto const* node = find_node(tree_, m.node());
    if (!node->text && !node->flags.editable) {
        throw SimulationError("programmatic text change: node '" + m.node() + "' holds no text");
    }
    set_text(m.node(), std::move(text));
    rerender();
    std::vector<AccEvent> out;
    emit(make_event(AccEventKind::view_text_changed, *find_node(tree_, m.node())), out);
    return out;
}

PerformResult Session::perform(Selector const& selector, InteractionType action,
                               std::string_view arg) {
    if (windows_.empty()) {
        throw SimulationError("session not launched");
    }
    PerformResult result;
    auto m = evaluate_selector(tree_, selector);
    if (m.kind() == MatchResult::Kind::not_found) {
        result.status = PerformStatus::not_found;
        result.message = "no element matches " + describe(selector);
        return result;
    }
    if (m.kind() == MatchResult::Kind::ambiguous) {
        result.status = PerformStatus::ambiguous;
        result.message = std::to_string(m.count()) + " elements match " + describe(selector);
        return result;
    }
    auto const* node = find_node(tree_, m.node());
    if (action == InteractionType::scroll) {
        result.events = scroll(scroll_direction_from_string(arg.empty() ? "down" : arg));
        return result;
    }
    if (!tree_.screen.contains(node->bounds.center_x(), node->bounds.center_y())) {
        result.status = PerformStatus::off_screen;
        result.message = describe(selector) + " is outside the visible screen";
        return result;
    }
    switch (action) {
    case InteractionType::click:
        if (node->flags.clickable && node->flags.enabled) {
            result.events = activate(TriggerKind::click, node->id, AccEventKind::view_clicked);
        }
        break;
    case InteractionType::long_click:
        if (node->flags.long_clickable && node->flags.enabled) {
            result.events =
                activate(TriggerKind::long_click, node->id, AccEventKind::view_long_clicked);
        }
        break;
    case InteractionType::select:
        if (node->flags.selectable && node->flags.enabled) {
            result.events = activate(TriggerKind::select, node->id, AccEventKind::view_selected);
        }
        break;
    case InteractionType::type:
        if (!node->flags.editable || !node->flags.enabled) {
            result.status = PerformStatus::not_actionable;
            result.message = describe(selector) + " does not accept text";
            return result;
        }
        result.events = type_into(node->id, std::string(arg));
        break;
    case InteractionType::scroll:
        break;
    }
    return result;
}

} // namespace tracecast::sim
