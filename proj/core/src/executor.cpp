#include "tracecast/executor.hpp"

#include <future>
#include <iomanip>
#include <sstream>

#include "tracecast/errors.hpp"
#include "tracecast/oracle.hpp"

namespace tracecast::exec {

namespace {

InteractionType interaction_for(gen::Operation op) {
    switch (op) {
    case gen::Operation::long_click:
        return InteractionType::long_click;
    case gen::Operation::type_text:
        return InteractionType::type;
    case gen::Operation::select:
        return InteractionType::select;
    case gen::Operation::scroll:
        return InteractionType::scroll;
    default:
        return InteractionType::click;
    }
}

AssertionDef assertion_for(gen::ActionStmt const& a) {
    AssertionDef def;
    def.property = *a.property;
    def.selector = *a.selector;
    def.values = a.params;
    def.related = a.related;
    def.negated = a.negated;
    def.threshold = a.threshold;
    def.timestamp = a.timestamp;
    return def;
}

DeviceResult stop_at(DeviceResult result, Outcome outcome, std::size_t step, std::string message,
                     sim::Session const& session, std::optional<Selector> const& selector) {
    result.outcome = outcome;
    result.failing_step = step;
    result.message = std::move(message);
    nlohmann::json snapshot{{"tree", session.tree()}};
    if (selector) {
        snapshot["selector"] = *selector;
    }
    result.debug_snapshot = std::move(snapshot);
    return result;
}

} // namespace

std::string_view to_string(Outcome o) {
    switch (o) {
    case Outcome::pass:
        return "pass";
    case Outcome::error:
        return "error";
    case Outcome::failure:
        return "failure";
    }
    return "?";
}

Outcome outcome_from_string(std::string_view s) {
    if (s == "pass") {
        return Outcome::pass;
    }
    if (s == "error") {
        return Outcome::error;
    }
    if (s == "failure") {
        return Outcome::failure;
    }
    throw ParseError("unknown outcome '" + std::string(s) + "'");
}

std::vector<sim::Session> prepare(std::shared_ptr<sim::AppSpec const> app,
                                  std::vector<sim::DeviceProfile> const& devices) {
    if (!app) {
        throw ConfigError("no app spec");
    }
    auto checked = *app;
    sim::validate(checked);
    std::vector<sim::Session> sessions;
    sessions.reserve(devices.size());
    for (auto const& d : devices) {
        sessions.emplace_back(app, d);
    }
    return sessions;
}

DeviceResult execute(gen::TestScript const& script, sim::Session& session,
                     ExecutorOptions const& options) {
    DeviceResult result;
    result.device = session.device().name;
    auto const start = session.now();

    try {
        session.launch(script.launch_activity, session.now());
    } catch (ConfigError const& e) {
        result = stop_at(std::move(result), Outcome::error, 0, e.what(), session, std::nullopt);
        return result;
    }

    for (std::size_t i = 0; i < script.steps.size(); ++i) {
        auto const& step = script.steps[i];
        if (auto const* pause = std::get_if<gen::PauseStmt>(&step)) {
            session.advance_clock(pause->duration_ms);
            continue;
        }
        auto const& a = std::get<gen::ActionStmt>(step);

        std::int64_t waited = 0;
        while (session.has_pending_transitions()) {
            if (waited >= options.quiescence_timeout_ms) {
                result.duration_ms = session.now() - start;
                return stop_at(std::move(result), Outcome::error, i,
                               "UI did not settle within " +
                                   std::to_string(options.quiescence_timeout_ms) + " ms",
                               session, a.selector);
            }
            session.advance_clock(1);
            ++waited;
        }
        session.advance_clock(options.step_cost_ms);

        switch (a.op) {
        case gen::Operation::press_ime_action:
            session.press_key(KeyType::action);
            break;
        case gen::Operation::close_keyboard:
            session.press_key(KeyType::close);
            break;
        case gen::Operation::check: {
            auto verdict = oracle::check_assertion(session.tree(), assertion_for(a),
                                                   session.tree().screen);
            if (verdict.verdict == oracle::Verdict::unresolved) {
                result.duration_ms = session.now() - start;
                return stop_at(std::move(result), Outcome::error, i, verdict.message, session,
                               a.selector);
            }
            if (verdict.verdict == oracle::Verdict::fail) {
                result.duration_ms = session.now() - start;
                return stop_at(std::move(result), Outcome::failure, i, verdict.message, session,
                               a.selector);
            }
            break;
        }
        default: {
            std::string arg;
            if (!a.params.empty()) {
                arg = to_display(a.params.front());
            }
            auto performed = session.perform(*a.selector, interaction_for(a.op), arg);
            if (!performed.ok()) {
                result.duration_ms = session.now() - start;
                return stop_at(std::move(result), Outcome::error, i, performed.message, session,
                               a.selector);
            }
            break;
        }
        }
    }
    result.duration_ms = session.now() - start;
    return result;
}

ExecutionReport run_all(gen::TestScript const& script, std::shared_ptr<sim::AppSpec const> app,
                        std::vector<sim::DeviceProfile> const& devices,
                        ExecutorOptions const& options) {
    auto sessions = prepare(std::move(app), devices);
    ExecutionReport report;
    report.script = script.name;
    report.results.resize(sessions.size());
    if (options.parallel && sessions.size() > 1) {
        std::vector<std::future<DeviceResult>> pending;
        pending.reserve(sessions.size());
        for (auto& s : sessions) {
            pending.push_back(std::async(std::launch::async,
                                         [&script, &s, &options] { return execute(script, s, options); }));
        }
        for (std::size_t i = 0; i < pending.size(); ++i) {
            report.results[i] = pending[i].get();
        }
    } else {
        for (std::size_t i = 0; i < sessions.size(); ++i) {
            report.results[i] = execute(script, sessions[i], options);
        }
    }
    tally(report);
    return report;
}

void tally(ExecutionReport& report) {
    report.passed = report.errors = report.failures = 0;
    for (auto const& r : report.results) {
        switch (r.outcome) {
        case Outcome::pass:
            ++report.passed;
            break;
        case Outcome::error:
            ++report.errors;
            break;
        case Outcome::failure:
            ++report.failures;
            break;
        }
    }
}

nlohmann::json to_json(ExecutionReport const& report) {
    auto devices = nlohmann::json::array();
    for (auto const& r : report.results) {
        nlohmann::json d{{"device", r.device},
                         {"outcome", to_string(r.outcome)},
                         {"durationMs", r.duration_ms}};
        if (r.failing_step) {
            d["failingStep"] = *r.failing_step;
        }
        if (r.message) {
            d["message"] = *r.message;
        }
        if (r.debug_snapshot) {
            d["debug"] = *r.debug_snapshot;
        }
        devices.push_back(std::move(d));
    }
    return {{"script", report.script},
            {"devices", devices},
            {"summary",
             {{"total", report.results.size()},
              {"pass", report.passed},
              {"error", report.errors},
              {"failure", report.failures}}}};
}

ExecutionReport report_from_json(nlohmann::json const& j) {
    ExecutionReport report;
    try {
        report.script = j.at("script").get<std::string>();
        for (auto const& d : j.at("devices")) {
            DeviceResult r;
            r.device = d.at("device").get<std::string>();
            r.outcome = outcome_from_string(d.at("outcome").get<std::string>());
            r.duration_ms = d.at("durationMs").get<std::int64_t>();
            if (d.contains("failingStep")) {
                r.failing_step = d.at("failingStep").get<std::size_t>();
            }
            if (d.contains("message")) {
                r.message = d.at("message").get<std::string>();
            }
            if (d.contains("debug")) {
                r.debug_snapshot = d.at("debug");
            }
            report.results.push_back(std::move(r));
        }
    } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("report: ") + e.what());
    }
    tally(report);
    return report;
}

std::string summary_text(ExecutionReport const& report) {
    std::ostringstream out;
    out << "script " << (report.script.empty() ? "(unnamed)" : report.script) << ": "
        << report.passed << "/" << report.results.size() << " passed, " << report.failures
        << " failed, " << report.errors << " errored\n";
    for (auto const& r : report.results) {
        out << "  " << std::left << std::setw(22) << r.device << " " << std::setw(8)
            << to_string(r.outcome) << std::right << std::setw(8) << r.duration_ms << " ms";
        if (r.failing_step) {
            out << "  step " << *r.failing_step << ": " << r.message.value_or("");
        }
        out << "\n";
    }
    return out.str();
}

} // namespace tracecast::exec
