#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tracecast/app_spec.hpp"
#include "tracecast/device.hpp"
#include "tracecast/events.hpp"
#include "tracecast/render.hpp"
#include "tracecast/selector.hpp"

namespace tracecast::sim {

class SimulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PerformStatus { ok, not_found, ambiguous, off_screen, not_actionable };

std::string_view to_string(PerformStatus s);

struct PerformResult {
    PerformStatus status = PerformStatus::ok;
    std::string message;
    std::vector<AccEvent> events;

    bool ok() const { return status == PerformStatus::ok; }
};

/// One simulated device running one app. Single owner; every call mutates
/// state serially and the UI settles before the call returns.
class Session {
public:
    // Called for every emitted event with the tree current at emission time.
    using EventSink = std::function<void(AccEvent const&, UiTree const&)>;
    // Input-method keys bypass the accessibility stream.
    using KeySink = std::function<void(KeyType, std::int64_t timestamp)>;

    Session(std::shared_ptr<AppSpec const> app, DeviceProfile device);

    /// Starts `activity` (the app's main activity by default) as the only
    /// window. Emits WINDOW_STATE_CHANGED.
    std::vector<AccEvent> launch(std::int64_t timestamp = 0);
    std::vector<AccEvent> launch(std::string const& activity, std::int64_t timestamp);

    UiTree const& tree() const { return tree_; }
    DeviceProfile const& device() const { return device_; }
    AppSpec const& app() const { return *app_; }
    StateMap const& state() const { return state_; }
    std::int64_t now() const { return clock_; }
    std::string const& current_screen() const;
    std::size_t window_depth() const { return windows_.size(); }

    void advance_clock(std::int64_t ms);
    // Transitions are synchronous, so nothing is ever pending.
    bool has_pending_transitions() const { return false; }

    void set_event_sink(EventSink sink) { event_sink_ = std::move(sink); }
    void set_key_sink(KeySink sink) { key_sink_ = std::move(sink); }

    /// User gesture. Gestures on non-interactive nodes produce no events.
    std::vector<AccEvent> dispatch(Gesture const& gesture);

    /// Text set by app code rather than the user: exactly one
    /// VIEW_TEXT_CHANGED, never followed by WINDOW_CONTENT_CHANGED.
    /// Throws SimulationError unless the selector resolves uniquely.
    std::vector<AccEvent> programmatic_text_change(Selector const& selector, std::string text);

    /// Selector-driven action as a test runner performs it. Click, long
    /// click, select and type need the target's bounds center on-screen.
    /// `arg` is the text for type and the direction for scroll.
    PerformResult perform(Selector const& selector, InteractionType action,
                          std::string_view arg = {});

    std::vector<AccEvent> press_key(KeyType key);

private:
    struct Window {
        std::string screen;
        int scroll_offset_px = 0;
    };

    void rerender();
    void emit(AccEvent event, std::vector<AccEvent>& out);
    AccEvent make_event(AccEventKind kind, UiNode const& node) const;
    void emit_window_change(std::vector<Window> const& windows_before,
                            UiTree const& tree_before, std::vector<AccEvent>& out);
    std::vector<AccEvent> activate(TriggerKind trigger, NodeId node_id,
                                   AccEventKind event_kind);
    std::vector<AccEvent> type_into(NodeId node_id, std::string new_text);
    std::vector<AccEvent> scroll(ScrollDirection direction);
    std::vector<Transition const*> matching(TriggerKind trigger, NodeId const& node_id) const;
    void apply(Transition const& t, StateMap const& extras);
    void set_text(NodeId const& node_id, std::string text);

    std::shared_ptr<AppSpec const> app_;
    DeviceProfile device_;
    StateMap state_;
    std::vector<Window> windows_;
    std::optional<NodeId> focused_;
    std::map<NodeId, std::string> text_overrides_;
    UiTree tree_;
    std::int64_t clock_ = 0;
    EventSink event_sink_;
    KeySink key_sink_;
};

} // namespace tracecast::sim
