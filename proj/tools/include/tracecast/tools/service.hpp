#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "tracecast/app_spec.hpp"
#include "tracecast/device.hpp"
#include "tracecast/oracle.hpp"
#include "tracecast/recorder.hpp"
#include "tracecast/session.hpp"

namespace tracecast::tools {

enum class Phase { idle, recording, asserting, stopped };

std::string_view to_string(Phase p);

// Request not valid in the current phase (HTTP 409).
class PhaseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Well-formed request that cannot be honoured, e.g. no element at a point (HTTP 422).
class RequestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One live recording session over one simulated device. All calls are
/// serialized; subscribers receive {type, payload} messages after every
/// mutation ("tree", "highlight", "phase").
///
/// While asserting, gestures are swallowed: they reach neither the app nor
/// the trace.
class RecordingService {
public:
    using Subscriber = std::function<void(nlohmann::json const& message)>;

    RecordingService(std::shared_ptr<sim::AppSpec const> app, sim::DeviceProfile device,
                     oracle::PropertyRegistry registry = oracle::PropertyRegistry::builtin());

    Phase phase() const;

    // idle|stopped -> recording. Fresh app state and an empty trace.
    nlohmann::json start(std::string name = {});
    nlohmann::json tree() const;
    nlohmann::json status() const;

    // Body is a gesture object as in gesture logs.
    nlohmann::json gesture(nlohmann::json const& body);
    nlohmann::json key(KeyType key, std::optional<std::int64_t> t = {});

    // recording -> asserting; returns the selection for the element at (x, y).
    nlohmann::json assert_begin(int x, int y, std::optional<std::int64_t> t = {});
    // Re-targets the pending selection while asserting.
    nlohmann::json assert_properties(int x, int y);
    // asserting -> recording. Body: property, value?, negated?, threshold?,
    // related? (selector) or relatedX/relatedY, t?
    nlohmann::json assert_commit(nlohmann::json const& body);
    nlohmann::json assert_cancel();
    nlohmann::json assert_auto(int x, int y, std::optional<std::int64_t> t = {});

    // recording -> stopped; returns the trace.
    nlohmann::json stop();

    int subscribe(Subscriber s);
    void unsubscribe(int id);

private:
    void require(Phase expected, std::string_view what) const;
    void set_phase(Phase p);
    void publish(std::string_view type, nlohmann::json payload);
    void publish_tree();
    void catch_up(std::optional<std::int64_t> t);
    nlohmann::json select_at(int x, int y);

    std::shared_ptr<sim::AppSpec const> app_;
    sim::DeviceProfile device_;
    oracle::PropertyRegistry registry_;

    mutable std::recursive_mutex mutex_;
    Phase phase_ = Phase::idle;
    std::unique_ptr<sim::Session> session_;
    std::unique_ptr<rec::Recorder> recorder_;
    std::optional<oracle::ManualSelection> pending_;
    std::optional<RecordedTrace> last_trace_;

    std::map<int, Subscriber> subscribers_;
    int next_subscriber_ = 1;
};

} // namespace tracecast::tools
