#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "tracecast/events.hpp"
#include "tracecast/trace.hpp"
#include "tracecast/ui_query.hpp"

namespace tracecast::rec {

/// Separates user typing from text set by app code: a VIEW_TEXT_CHANGED is
/// accepted only when the very next event is WINDOW_CONTENT_CHANGED.
class TypeFsm {
public:
    enum class State { idle, pending };

    State state() const { return pending_ ? State::pending : State::idle; }

    void buffer(InteractionDef type_action) { pending_ = std::move(type_action); }

    // Resolves a pending change against the next event. Returns the accepted
    // action, or nullopt when idle or rejected.
    std::optional<InteractionDef> resolve(sim::AccEventKind next) {
        auto pending = std::move(pending_);
        pending_.reset();
        if (pending && next == sim::AccEventKind::window_content_changed) {
            return pending;
        }
        return std::nullopt;
    }

    void discard() { pending_.reset(); }

private:
    std::optional<InteractionDef> pending_;
};

/// Builds a RecordedTrace from the accessibility event stream of one
/// recording session.
class Recorder {
public:
    Recorder(std::string package_name, std::string main_activity, std::string name = {});

    /// Events must arrive in emission order, each with the tree current
    /// when it was emitted.
    void on_event(sim::AccEvent const& event, UiTree const& current_tree);

    /// Unique resource id, else XPath, else (no live node) class + text.
    Selector choose_selector(std::optional<NodeId> const& source, sim::AccEvent const& payload,
                             UiTree const& current_tree) const;

    void record_key(KeyType key, std::int64_t timestamp);
    void record_assertion(AssertionDef assertion);

    /// Drops an unresolved text change and finalizes the trace.
    RecordedTrace stop();

    bool active() const { return active_; }
    RecordedTrace const& trace() const { return trace_; }
    ResourceIdMap const& resource_ids() const { return resource_ids_; }
    TypeFsm::State fsm_state() const { return fsm_.state(); }

private:
    void append(Action action);

    RecordedTrace trace_;
    ResourceIdMap resource_ids_;
    TypeFsm fsm_;
    bool active_ = true;
};

} // namespace tracecast::rec
