#include "tracecast/tools/gesture_log.hpp"

#include <fstream>
#include <istream>

#include <nlohmann/json.hpp>

#include "tracecast/errors.hpp"
#include "tracecast/recorder.hpp"
#include "tracecast/session.hpp"
#include "tracecast/ui_query.hpp"

namespace tracecast::tools {

namespace {

Command parse_command(nlohmann::json const& j) {
    auto const type = j.at("type").get<std::string>();
    auto const t = j.at("t").get<std::int64_t>();
    if (type == "assertAuto") {
        return AssertAuto{j.at("x").get<int>(), j.at("y").get<int>(), t};
    }
    if (type == "assertManual") {
        AssertManual m;
        m.x = j.at("x").get<int>();
        m.y = j.at("y").get<int>();
        m.timestamp = t;
        m.choice.property = property_from_string(j.at("property").get<std::string>());
        if (auto it = j.find("value"); it != j.end() && !it->is_null()) {
            m.choice.value = it->get<Scalar>();
        }
        m.choice.negated = j.value("negated", false);
        if (auto it = j.find("threshold"); it != j.end() && !it->is_null()) {
            m.choice.threshold = it->get<int>();
        }
        if (j.contains("relatedX") && j.contains("relatedY")) {
            m.related_at = std::pair{j.at("relatedX").get<int>(), j.at("relatedY").get<int>()};
        }
        return m;
    }
    if (type == "programmaticText") {
        return ProgrammaticText{j.at("selector").get<Selector>(), j.at("text").get<std::string>(),
                                t};
    }
    return j.get<sim::Gesture>();
}

bool on_screen(UiTree const& tree, int x, int y) { return tree.screen.contains(x, y); }

void catch_up(sim::Session& session, std::int64_t t) {
    session.advance_clock(t - session.now());
}

} // namespace

std::int64_t timestamp_of(Command const& c) {
    return std::visit(
        [](auto const& v) -> std::int64_t { return v.timestamp; }, c);
}

std::vector<Command> parse_gesture_log(std::istream& in) {
    std::vector<Command> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        try {
            out.push_back(parse_command(nlohmann::json::parse(line)));
        } catch (nlohmann::json::exception const& e) {
            throw ParseError("gesture log line " + std::to_string(line_no) + ": " + e.what());
        } catch (ParseError const& e) {
            throw ParseError("gesture log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return out;
}

std::vector<Command> load_gesture_log(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open gesture log '" + path + "'");
    }
    return parse_gesture_log(in);
}

RecordOutcome record_headless(std::shared_ptr<sim::AppSpec const> app, sim::DeviceProfile device,
                              std::vector<Command> const& commands, RecordOptions const& options) {
    sim::Session session(app, std::move(device));
    rec::Recorder recorder(app->package_name, app->main_activity, options.name);
    session.set_event_sink(
        [&recorder](sim::AccEvent const& e, UiTree const& tree) { recorder.on_event(e, tree); });
    session.set_key_sink([&recorder](KeyType k, std::int64_t ts) { recorder.record_key(k, ts); });
    session.launch(0);

    RecordOutcome outcome;
    auto warn = [&](std::size_t i, std::string const& what) {
        outcome.warnings.push_back("command " + std::to_string(i + 1) + ": " + what);
    };

    for (std::size_t i = 0; i < commands.size(); ++i) {
        auto const& cmd = commands[i];
        if (auto const* g = std::get_if<sim::Gesture>(&cmd)) {
            if (auto p = sim::gesture_point(*g); p && !on_screen(session.tree(), p->first, p->second)) {
                warn(i, "point (" + std::to_string(p->first) + ", " + std::to_string(p->second) +
                            ") is off-screen; gesture skipped");
                continue;
            }
            session.dispatch(*g);
        } else if (auto const* a = std::get_if<AssertAuto>(&cmd)) {
            catch_up(session, a->timestamp);
            if (!on_screen(session.tree(), a->x, a->y)) {
                warn(i, "assertion point is off-screen; skipped");
                continue;
            }
            for (auto const& def :
                 oracle::auto_assert(recorder, session.tree(), a->x, a->y, session.now(),
                                     options.registry)) {
                recorder.record_assertion(def);
            }
        } else if (auto const* m = std::get_if<AssertManual>(&cmd)) {
            catch_up(session, m->timestamp);
            auto const& tree = session.tree();
            auto selection = on_screen(tree, m->x, m->y)
                                 ? oracle::manual_select(tree, m->x, m->y, options.registry)
                                 : std::nullopt;
            if (!selection) {
                warn(i, "no element at assertion point; skipped");
                continue;
            }
            auto choice = m->choice;
            if (m->related_at) {
                auto other = hit_test(tree, m->related_at->first, m->related_at->second);
                if (!other) {
                    warn(i, "no element at related point; skipped");
                    continue;
                }
                sim::AccEvent payload;
                auto const* node = find_node(tree, *other);
                payload.class_name = node->class_name;
                payload.text = node->text;
                choice.related = recorder.choose_selector(*other, payload, tree);
            }
            try {
                oracle::commit_manual(recorder, tree, selection->node, choice, session.now());
            } catch (std::invalid_argument const& e) {
                warn(i, e.what());
            }
        } else {
            auto const& p = std::get<ProgrammaticText>(cmd);
            catch_up(session, p.timestamp);
            try {
                session.programmatic_text_change(p.selector, p.text);
            } catch (sim::SimulationError const& e) {
                warn(i, e.what());
            }
        }
    }
    outcome.trace = recorder.stop();
    return outcome;
}

} // namespace tracecast::tools
