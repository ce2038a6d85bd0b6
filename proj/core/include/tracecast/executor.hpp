#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tracecast/app_spec.hpp"
#include "tracecast/device.hpp"
#include "tracecast/session.hpp"
#include "tracecast/testgen.hpp"

namespace tracecast::exec {

/// error: an element could not be resolved or acted on (or the UI never
/// settled). failure: an assertion evaluated to false.
enum class Outcome { pass, error, failure };

std::string_view to_string(Outcome o);
Outcome outcome_from_string(std::string_view s);

struct DeviceResult {
    std::string device;
    Outcome outcome = Outcome::pass;
    std::int64_t duration_ms = 0;
    std::optional<std::size_t> failing_step; // index into TestScript::steps
    std::optional<std::string> message;
    // {"tree": UiTree at the failing step, "selector": the selector involved}
    std::optional<nlohmann::json> debug_snapshot;

    friend bool operator==(DeviceResult const&, DeviceResult const&) = default;
};

struct ExecutionReport {
    std::string script;
    std::vector<DeviceResult> results;
    std::size_t passed = 0;
    std::size_t errors = 0;
    std::size_t failures = 0;

    bool all_passed() const { return passed == results.size(); }
};

struct ExecutorOptions {
    std::int64_t quiescence_timeout_ms = 5000;
    std::int64_t step_cost_ms = 1;
    bool parallel = true;
};

/// One fresh, not yet launched session per profile, in input order. Throws
/// ConfigError for an invalid app or profile.
std::vector<sim::Session> prepare(std::shared_ptr<sim::AppSpec const> app,
                                  std::vector<sim::DeviceProfile> const& devices);

DeviceResult execute(gen::TestScript const& script, sim::Session& session,
                     ExecutorOptions const& options = {});

/// Runs every device to completion, concurrently unless disabled. Result
/// order follows the device list.
ExecutionReport run_all(gen::TestScript const& script, std::shared_ptr<sim::AppSpec const> app,
                        std::vector<sim::DeviceProfile> const& devices,
                        ExecutorOptions const& options = {});

// Recomputes the aggregate counts from the result list.
void tally(ExecutionReport& report);

nlohmann::json to_json(ExecutionReport const& report);
ExecutionReport report_from_json(nlohmann::json const& j);
std::string summary_text(ExecutionReport const& report);

} // namespace tracecast::exec
