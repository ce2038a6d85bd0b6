#include "tracecast/recorder.hpp"

#include <stdexcept>

namespace tracecast::rec {

namespace {

std::optional<InteractionType> interaction_for(sim::AccEventKind kind) {
    switch (kind) {
    case sim::AccEventKind::view_clicked:
        return InteractionType::click;
    case sim::AccEventKind::view_long_clicked:
        return InteractionType::long_click;
    case sim::AccEventKind::view_selected:
        return InteractionType::select;
    case sim::AccEventKind::view_scrolled:
        return InteractionType::scroll;
    default:
        return std::nullopt;
    }
}

} // namespace

Recorder::Recorder(std::string package_name, std::string main_activity, std::string name) {
    trace_.name = std::move(name);
    trace_.package_name = std::move(package_name);
    trace_.main_activity = std::move(main_activity);
}

void Recorder::append(Action action) {
    if (!active_) {
        throw std::logic_error("recorder already stopped");
    }
    trace_.actions.push_back(std::move(action));
}

Selector Recorder::choose_selector(std::optional<NodeId> const& source,
                                   sim::AccEvent const& payload,
                                   UiTree const& current_tree) const {
    if (source) {
        if (auto const* node = find_node(current_tree, *source)) {
            if (node->resource_id) {
                auto it = resource_ids_.find(*node->resource_id);
                if (it != resource_ids_.end() && it->second == 1) {
                    return ResourceIdSelector{*node->resource_id};
                }
            }
            return XPathSelector{xpath_for(current_tree, *source)};
        }
    }
    auto cls = payload.class_name.value_or("");
    return PropertySelector{cls.empty() ? std::string("View") : cls, payload.text};
}

void Recorder::on_event(sim::AccEvent const& event, UiTree const& current_tree) {
    if (!active_) {
        return;
    }
    if (auto accepted = fsm_.resolve(event.kind)) {
        append(std::move(*accepted));
    }

    if (sim::is_window_event(event.kind)) {
        resource_ids_ = build_resource_id_map(current_tree);
        return;
    }
    if (event.kind == sim::AccEventKind::view_text_changed) {
        InteractionDef typed{InteractionType::type,
                             choose_selector(event.source, event, current_tree), event.timestamp,
                             {Scalar{event.text.value_or("")}}};
        fsm_.buffer(std::move(typed));
        return;
    }
    if (auto type = interaction_for(event.kind)) {
        InteractionDef action{*type, choose_selector(event.source, event, current_tree),
                              event.timestamp, {}};
        if (*type == InteractionType::scroll) {
            action.props.emplace_back(event.text.value_or("down"));
        }
        append(std::move(action));
    }
}

void Recorder::record_key(KeyType key, std::int64_t timestamp) {
    // Keys and assertions are not accessibility events, but a user-typed
    // change would already have been confirmed; a pending one is programmatic.
    fsm_.discard();
    append(KeyDef{key, timestamp});
}

void Recorder::record_assertion(AssertionDef assertion) {
    fsm_.discard();
    check_well_formed(assertion);
    append(std::move(assertion));
}

RecordedTrace Recorder::stop() {
    fsm_.discard();
    active_ = false;
    return trace_;
}

} // namespace tracecast::rec
