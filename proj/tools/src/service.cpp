#include "tracecast/tools/service.hpp"

#include "tracecast/errors.hpp"
#include "tracecast/ui_query.hpp"

namespace tracecast::tools {

namespace {

nlohmann::json selection_json(oracle::ManualSelection const& s, UiNode const& node) {
    auto props = nlohmann::json::array();
    for (auto p : s.properties) {
        props.push_back(std::string(to_string(p)));
    }
    return {{"node", s.node},
            {"class", node.class_name},
            {"text", node.text ? nlohmann::json(*node.text) : nlohmann::json()},
            {"highlight", s.highlight},
            {"properties", props}};
}

} // namespace

std::string_view to_string(Phase p) {
    switch (p) {
    case Phase::idle:
        return "idle";
    case Phase::recording:
        return "recording";
    case Phase::asserting:
        return "asserting";
    case Phase::stopped:
        return "stopped";
    }
    return "?";
}

RecordingService::RecordingService(std::shared_ptr<sim::AppSpec const> app,
                                   sim::DeviceProfile device, oracle::PropertyRegistry registry)
    : app_(std::move(app)), device_(std::move(device)), registry_(std::move(registry)) {
    sim::validate(device_);
}

Phase RecordingService::phase() const {
    std::lock_guard lock(mutex_);
    return phase_;
}

void RecordingService::require(Phase expected, std::string_view what) const {
    if (phase_ != expected) {
        throw PhaseError(std::string(what) + " requires phase " + std::string(to_string(expected)) +
                         ", session is " + std::string(to_string(phase_)));
    }
}

void RecordingService::set_phase(Phase p) {
    phase_ = p;
    publish("phase", {{"phase", to_string(p)}});
}

void RecordingService::publish(std::string_view type, nlohmann::json payload) {
    nlohmann::json message{{"type", type}, {"payload", std::move(payload)}};
    for (auto const& [id, s] : subscribers_) {
        s(message);
    }
}

void RecordingService::publish_tree() {
    if (session_) {
        publish("tree", session_->tree());
    }
}

void RecordingService::catch_up(std::optional<std::int64_t> t) {
    if (t) {
        session_->advance_clock(*t - session_->now());
    }
}

nlohmann::json RecordingService::start(std::string name) {
    std::lock_guard lock(mutex_);
    if (phase_ == Phase::recording || phase_ == Phase::asserting) {
        throw PhaseError("a recording session is already active");
    }
    session_ = std::make_unique<sim::Session>(app_, device_);
    recorder_ = std::make_unique<rec::Recorder>(app_->package_name, app_->main_activity,
                                                std::move(name));
    session_->set_event_sink(
        [this](sim::AccEvent const& e, UiTree const& tree) { recorder_->on_event(e, tree); });
    session_->set_key_sink([this](KeyType k, std::int64_t ts) { recorder_->record_key(k, ts); });
    pending_.reset();
    session_->launch(0);
    set_phase(Phase::recording);
    publish_tree();
    return status();
}

nlohmann::json RecordingService::tree() const {
    std::lock_guard lock(mutex_);
    if (!session_) {
        throw PhaseError("no session has been started");
    }
    return session_->tree();
}

nlohmann::json RecordingService::status() const {
    std::lock_guard lock(mutex_);
    nlohmann::json j{{"phase", to_string(phase_)},
                     {"device", device_.name},
                     {"package", app_->package_name}};
    if (recorder_) {
        j["actions"] = recorder_->trace().actions.size();
    }
    if (session_) {
        j["clock"] = session_->now();
    }
    return j;
}

nlohmann::json RecordingService::gesture(nlohmann::json const& body) {
    std::lock_guard lock(mutex_);
    if (phase_ == Phase::asserting) {
        // The assertion pane swallows the interaction.
        return {{"intercepted", true}, {"events", nlohmann::json::array()}};
    }
    require(Phase::recording, "gesture");
    sim::Gesture g;
    try {
        g = body.get<sim::Gesture>();
    } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("gesture: ") + e.what());
    }
    if (auto p = sim::gesture_point(g); p && !session_->tree().screen.contains(p->first, p->second)) {
        throw RequestError("point is off-screen");
    }
    auto events = session_->dispatch(g);
    publish_tree();
    return {{"intercepted", false}, {"events", events}};
}

nlohmann::json RecordingService::key(KeyType k, std::optional<std::int64_t> t) {
    std::lock_guard lock(mutex_);
    require(Phase::recording, "key");
    catch_up(t);
    auto events = session_->press_key(k);
    publish_tree();
    return {{"events", events}};
}

nlohmann::json RecordingService::select_at(int x, int y) {
    auto const& tree = session_->tree();
    auto selection = tree.screen.contains(x, y) ? oracle::manual_select(tree, x, y, registry_)
                                                : std::nullopt;
    if (!selection) {
        throw RequestError("no element at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    pending_ = *selection;
    auto j = selection_json(*selection, *find_node(tree, selection->node));
    publish("highlight", {{"node", selection->node}, {"rect", selection->highlight}});
    return j;
}

nlohmann::json RecordingService::assert_begin(int x, int y, std::optional<std::int64_t> t) {
    std::lock_guard lock(mutex_);
    require(Phase::recording, "assert/begin");
    catch_up(t);
    auto j = select_at(x, y);
    set_phase(Phase::asserting);
    return j;
}

nlohmann::json RecordingService::assert_properties(int x, int y) {
    std::lock_guard lock(mutex_);
    require(Phase::asserting, "assert/properties");
    return select_at(x, y);
}

nlohmann::json RecordingService::assert_commit(nlohmann::json const& body) {
    std::lock_guard lock(mutex_);
    require(Phase::asserting, "assert/commit");
    oracle::ManualChoice choice;
    try {
        choice.property = property_from_string(body.at("property").get<std::string>());
        if (auto it = body.find("value"); it != body.end() && !it->is_null()) {
            choice.value = it->get<Scalar>();
        }
        choice.negated = body.value("negated", false);
        if (auto it = body.find("threshold"); it != body.end() && !it->is_null()) {
            choice.threshold = it->get<int>();
        }
        if (auto it = body.find("related"); it != body.end() && !it->is_null()) {
            choice.related = it->get<Selector>();
        }
    } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("assert/commit: ") + e.what());
    }
    if (body.contains("t")) {
        catch_up(body.at("t").get<std::int64_t>());
    }
    auto const& tree = session_->tree();
    if (!choice.related && body.contains("relatedX") && body.contains("relatedY")) {
        auto other = hit_test(tree, body.at("relatedX").get<int>(), body.at("relatedY").get<int>());
        if (!other) {
            throw RequestError("no element at related point");
        }
        sim::AccEvent payload;
        auto const* node = find_node(tree, *other);
        payload.class_name = node->class_name;
        payload.text = node->text;
        choice.related = recorder_->choose_selector(*other, payload, tree);
    }
    AssertionDef def;
    try {
        def = oracle::commit_manual(*recorder_, tree, pending_->node, choice, session_->now());
    } catch (std::invalid_argument const& e) {
        throw RequestError(e.what());
    }
    pending_.reset();
    set_phase(Phase::recording);
    return def;
}

nlohmann::json RecordingService::assert_cancel() {
    std::lock_guard lock(mutex_);
    require(Phase::asserting, "assert/cancel");
    pending_.reset();
    set_phase(Phase::recording);
    return status();
}

nlohmann::json RecordingService::assert_auto(int x, int y, std::optional<std::int64_t> t) {
    std::lock_guard lock(mutex_);
    require(Phase::recording, "assert/auto");
    catch_up(t);
    if (!session_->tree().screen.contains(x, y)) {
        throw RequestError("point is off-screen");
    }
    auto defs = oracle::auto_assert(*recorder_, session_->tree(), x, y, session_->now(), registry_);
    if (defs.empty()) {
        throw RequestError("no element at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
    auto out = nlohmann::json::array();
    for (auto const& d : defs) {
        recorder_->record_assertion(d);
        out.push_back(d);
    }
    return out;
}

nlohmann::json RecordingService::stop() {
    std::lock_guard lock(mutex_);
    require(Phase::recording, "stop");
    last_trace_ = recorder_->stop();
    set_phase(Phase::stopped);
    return *last_trace_;
}

int RecordingService::subscribe(Subscriber s) {
    std::lock_guard lock(mutex_);
    auto id = next_subscriber_++;
    subscribers_.emplace(id, std::move(s));
    return id;
}

void RecordingService::unsubscribe(int id) {
    std::lock_guard lock(mutex_);
    subscribers_.erase(id);
}

} // namespace tracecast::tools
