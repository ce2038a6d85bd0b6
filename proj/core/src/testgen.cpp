#include "tracecast/testgen.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"

namespace tracecast::gen {

namespace {

constexpr std::string_view ir_format = "tracecast-ir/1";

Operation operation_for(InteractionType t) {
    switch (t) {
    case InteractionType::click:
        return Operation::click;
    case InteractionType::long_click:
        return Operation::long_click;
    case InteractionType::type:
        return Operation::type_text;
    case InteractionType::select:
        return Operation::select;
    case InteractionType::scroll:
        return Operation::scroll;
    }
    return Operation::click;
}

ActionStmt compile(Action const& action) {
    return std::visit(
        [](auto const& a) -> ActionStmt {
            using T = std::decay_t<decltype(a)>;
            ActionStmt s;
            s.timestamp = a.timestamp;
            if constexpr (std::is_same_v<T, InteractionDef>) {
                s.selector = a.selector;
                s.op = operation_for(a.type);
                s.params = a.props;
            } else if constexpr (std::is_same_v<T, AssertionDef>) {
                s.selector = a.selector;
                s.op = Operation::check;
                s.params = a.values;
                s.property = a.property;
                s.related = a.related;
                s.negated = a.negated;
                s.threshold = a.threshold;
            } else {
                s.op = a.key == KeyType::action ? Operation::press_ime_action
                                                : Operation::close_keyboard;
            }
            return s;
        },
        action);
}

nlohmann::json step_json(Statement const& st) {
    if (auto const* p = std::get_if<PauseStmt>(&st)) {
        return {{"kind", "pause"}, {"durationMs", p->duration_ms}};
    }
    auto const& a = std::get<ActionStmt>(st);
    nlohmann::json j{{"kind", "action"},
                     {"op", to_string(a.op)},
                     {"params", a.params},
                     {"timestamp", a.timestamp}};
    if (a.selector) {
        j["selector"] = *a.selector;
    }
    if (a.op == Operation::check) {
        j["property"] = to_string(*a.property);
        j["negated"] = a.negated;
        if (a.related) {
            j["related"] = *a.related;
        }
        if (a.threshold) {
            j["threshold"] = *a.threshold;
        }
    }
    return j;
}

Statement step_from_json(nlohmann::json const& j) {
    auto kind = j.at("kind").get<std::string>();
    if (kind == "pause") {
        auto d = j.at("durationMs").get<std::int64_t>();
        if (d < 0) {
            throw ParseError("pause duration must be non-negative");
        }
        return PauseStmt{d};
    }
    if (kind != "action") {
        throw ParseError("unknown statement kind '" + kind + "'");
    }
    ActionStmt a;
    a.op = operation_from_string(j.at("op").get<std::string>());
    a.params = j.value("params", std::vector<Scalar>{});
    a.timestamp = j.value("timestamp", std::int64_t{0});
    if (auto it = j.find("selector"); it != j.end()) {
        a.selector = it->get<Selector>();
    }
    bool is_key = a.op == Operation::press_ime_action || a.op == Operation::close_keyboard;
    if (!is_key && !a.selector) {
        throw ParseError(std::string(to_string(a.op)) + " statement needs a selector");
    }
    if (a.op == Operation::check) {
        a.property = property_from_string(j.at("property").get<std::string>());
        a.negated = j.value("negated", false);
        if (auto it = j.find("related"); it != j.end()) {
            a.related = it->get<Selector>();
        }
        if (auto it = j.find("threshold"); it != j.end()) {
            a.threshold = it->get<int>();
        }
        if (is_relational(*a.property) && !a.related) {
            throw ParseError("relational check needs a related selector");
        }
    }
    return a;
}

} // namespace

std::string_view to_string(Operation op) {
    switch (op) {
    case Operation::click:
        return "click";
    case Operation::long_click:
        return "longClick";
    case Operation::type_text:
        return "typeText";
    case Operation::select:
        return "select";
    case Operation::scroll:
        return "scroll";
    case Operation::press_ime_action:
        return "pressImeAction";
    case Operation::close_keyboard:
        return "closeKeyboard";
    case Operation::check:
        return "check";
    }
    return "click";
}

Operation operation_from_string(std::string_view s) {
    for (auto op : {Operation::click, Operation::long_click, Operation::type_text,
                    Operation::select, Operation::scroll, Operation::press_ime_action,
                    Operation::close_keyboard, Operation::check}) {
        if (to_string(op) == s) {
            return op;
        }
    }
    throw ParseError("unknown operation '" + std::string(s) + "'");
}

TestScript generate(RecordedTrace const& trace, bool retain_time) {
    TestScript script;
    script.name = trace.name;
    script.package_name = trace.package_name;
    script.launch_activity = trace.main_activity;
    script.retain_time = retain_time;

    std::vector<ActionStmt> actions;
    for (auto const& action : trace.actions) {
        auto stmt = compile(action);
        if (stmt.op == Operation::type_text && !actions.empty()) {
            auto& last = actions.back();
            if (last.op == Operation::type_text && last.selector == stmt.selector) {
                last.params = std::move(stmt.params);
                last.timestamp = stmt.timestamp;
                continue;
            }
        }
        actions.push_back(std::move(stmt));
    }

    for (std::size_t i = 0; i < actions.size(); ++i) {
        if (retain_time && i > 0) {
            script.steps.emplace_back(PauseStmt{actions[i].timestamp - actions[i - 1].timestamp});
        }
        script.steps.emplace_back(std::move(actions[i]));
    }
    return script;
}

std::string emit_ir(TestScript const& script) {
    auto steps = nlohmann::json::array();
    for (auto const& st : script.steps) {
        steps.push_back(step_json(st));
    }
    nlohmann::json j{{"format", ir_format},
                     {"name", script.name},
                     {"package", script.package_name},
                     {"setup", {{"launch", script.launch_activity}}},
                     {"retainTime", script.retain_time},
                     {"steps", steps}};
    return j.dump(2) + "\n";
}

TestScript parse_ir(std::string_view text) {
    TestScript s;
    try {
        auto j = nlohmann::json::parse(text);
        if (j.value("format", std::string{}) != ir_format) {
            throw ParseError("not a " + std::string(ir_format) + " document");
        }
        s.name = j.value("name", std::string{});
        s.package_name = j.value("package", std::string{});
        s.launch_activity = j.at("setup").at("launch").get<std::string>();
        s.retain_time = j.value("retainTime", false);
        for (auto const& st : j.at("steps")) {
            s.steps.push_back(step_from_json(st));
        }
    } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("script: ") + e.what());
    }
    return s;
}

std::string identifier_from(std::string_view name) {
    std::string out;
    bool upper = true;
    for (char c : name) {
        if (std::isalnum(static_cast<unsigned char>(c)) != 0) {
            out += upper ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c;
            upper = false;
        } else {
            upper = true;
        }
    }
    if (out.empty()) {
        out = "Recorded";
    }
    if (std::isdigit(static_cast<unsigned char>(out.front())) != 0) {
        out.insert(0, "T");
    }
    return out;
}

std::size_t count_actions(TestScript const& script) {
    std::size_t n = 0;
    for (auto const& st : script.steps) {
        n += std::holds_alternative<ActionStmt>(st) ? 1 : 0;
    }
    return n;
}

std::size_t count_pauses(TestScript const& script) {
    return script.steps.size() - count_actions(script);
}

} // namespace tracecast::gen
