#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <thread>

#include <sys/wait.h>

#include "fixtures.hpp"
#include "http_driver.hpp"
#include "scripts.hpp"
#include "tracecast/errors.hpp"
#include "tracecast/executor.hpp"
#include "tracecast/tools/gesture_log.hpp"
#include "tracecast/tools/http_server.hpp"
#include "tracecast/tools/service.hpp"

using namespace tracecast;
using namespace tracecast::tools;
namespace fs = std::filesystem;

namespace {

RecordOutcome record(std::string_view app, std::string_view device, std::string_view log,
                     std::string name) {
    RecordOptions options;
    options.name = std::move(name);
    return record_headless(fixtures::app(app), fixtures::device(device),
                           load_gesture_log(fixtures::path(log)), options);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("tracecast-test-" + std::to_string(::getpid()) + "-" +
                                            std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(std::string const& name) const { return (path / name).string(); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

int cli(std::string const& args) {
    auto cmd = std::string(TRACECAST_CLI) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write(std::string const& path, std::string const& text) {
    std::ofstream(path, std::ios::binary) << text;
}

// Service on a loopback port for the duration of a test.
struct LiveServer {
    RecordingService service;
    HttpServer server;
    httplib::Client client;

    LiveServer(std::string_view app, std::string_view device)
        : service(fixtures::app(app), fixtures::device(device)),
          server(service),
          client("127.0.0.1", server.bind("127.0.0.1", 0)) {
        REQUIRE(server.port() > 0);
        server.start();
    }
};

} // namespace

TEST_CASE("gesture log parsing") {
    std::istringstream in(R"(# comment

{"t": 1, "type": "click", "x": 2, "y": 3}
{"t": 2, "type": "assertManual", "x": 1, "y": 1, "property": "displayed", "threshold": 40}
{"t": 3, "type": "programmaticText", "selector": {"type": "resourceId", "value": "a"}, "text": "z"}
{"t": 4, "type": "key", "key": "close"}
)");
    auto cmds = parse_gesture_log(in);
    REQUIRE(cmds.size() == 4);
    CHECK(std::get<sim::Gesture>(cmds[0]).timestamp == 1);
    CHECK(std::get<AssertManual>(cmds[1]).choice.threshold == std::optional<int>(40));
    CHECK(std::get<ProgrammaticText>(cmds[2]).text == "z");
    CHECK(timestamp_of(cmds[3]) == 4);

    std::istringstream bad("{\"t\": 1, \"type\": \"click\", \"x\": 2, \"y\": 3}\n{\"t\": 2, \"type\": \"wave\"}\n");
    try {
        parse_gesture_log(bad);
        FAIL("expected a parse error");
    } catch (ParseError const& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream garbage("{nope");
    CHECK_THROWS_AS(parse_gesture_log(garbage), ParseError);
}

TEST_CASE("headless recording reproduces the golden trace") {
    auto a = record("calculator", "mdpi-480x800", "gestures/divide_by_zero.jsonl", "divide_by_zero");
    CHECK(a.warnings.empty());
    CHECK(serialize_trace(a.trace) == fixtures::read("golden/divide_by_zero.trace.json"));
    auto b = record("calculator", "mdpi-480x800", "gestures/divide_by_zero.jsonl", "divide_by_zero");
    CHECK(serialize_trace(a.trace) == serialize_trace(b.trace));
}

TEST_CASE("headless recording edge cases") {
    auto empty = record_headless(fixtures::app("calculator"), fixtures::device("mdpi-480x800"), {});
    CHECK(empty.trace.actions.empty());
    CHECK(empty.trace.main_activity == "MainActivity");

    std::vector<Command> cmds{sim::Gesture{sim::Click{5000, 5}, 10},
                              sim::Gesture{sim::Click{135, 365}, 20},
                              AssertAuto{-1, 3, 30},
                              ProgrammaticText{ResourceIdSelector{"display"}, "99", 40}};
    auto out = record_headless(fixtures::app("calculator"), fixtures::device("mdpi-480x800"), cmds);
    CHECK(out.warnings.size() == 2);
    CHECK(out.trace.actions.size() == 1);
}

TEST_CASE("settings tour covers typing, keys, dialogs and assertions") {
    auto out = record("settings", "mdpi-480x800", "gestures/settings_tour.jsonl", "tour");
    CHECK(out.warnings.empty());
    auto const& actions = out.trace.actions;
    auto script = gen::generate(out.trace, false);
    auto java = gen::emit_espresso(script);
    CHECK(java.find("typeText(\"Bob\")") != std::string::npos);
    CHECK(java.find("pressImeActionButton()") != std::string::npos);
    CHECK(java.find("closeSoftKeyboard();") != std::string::npos);
    CHECK(java.find("allOf(withClassName(endsWith(\"Button\")), withText(\"5\"))") != std::string::npos);
    CHECK(java.find("withText(\"Hello Bob\")") != std::string::npos);
    CHECK(java.find("not(isChecked())") != std::string::npos);
    CHECK(java.find("hasSibling(withId(R.id.theme))") != std::string::npos);
    CHECK(java.find("isDisplayingAtLeast(50)") != std::string::npos);
    CHECK(java.find("withText(\"Dark\")") != std::string::npos);
    REQUIRE(actions.size() == 17);
    // One confirmed type action per keystroke, each carrying the whole field.
    for (auto [i, text] : {std::pair{1, "B"}, {2, "Bo"}, {3, "Bob"}}) {
        auto const& typed = std::get<InteractionDef>(actions[i]);
        CHECK(typed.type == InteractionType::type);
        CHECK(typed.props == std::vector<Scalar>{Scalar{std::string(text)}});
    }

    // The recorded script replays on every clean device.
    std::vector<sim::DeviceProfile> devices;
    for (auto name : fixtures::clean_devices) {
        devices.push_back(fixtures::device(name));
    }
    auto report = exec::run_all(script, fixtures::app("settings"), devices);
    CHECK(report.all_passed());
    for (auto const& r : report.results) {
        CAPTURE(r.device);
        CHECK(r.message.value_or("") == "");
    }
}

TEST_CASE("service phase machine") {
    RecordingService s(fixtures::app("calculator"), fixtures::device("mdpi-480x800"));
    std::vector<nlohmann::json> messages;
    s.subscribe([&](nlohmann::json const& m) { messages.push_back(m); });

    CHECK(s.phase() == Phase::idle);
    CHECK_THROWS_AS(s.tree(), PhaseError);
    CHECK_THROWS_AS(s.stop(), PhaseError);
    CHECK_THROWS_AS(s.gesture({{"t", 1}, {"type", "click"}, {"x", 1}, {"y", 1}}), PhaseError);

    s.start("x");
    CHECK(s.phase() == Phase::recording);
    CHECK_THROWS_AS(s.start("again"), PhaseError);
    CHECK_THROWS_AS(s.assert_commit({{"property", "text"}}), PhaseError);
    CHECK_THROWS_AS(s.assert_properties(1, 1), PhaseError);
    CHECK_THROWS_AS(s.assert_begin(9999, 1), RequestError);
    CHECK(s.phase() == Phase::recording);

    s.gesture({{"t", 10}, {"type", "click"}, {"x", 135}, {"y", 365}});
    auto sel = s.assert_begin(180, 60, 20);
    CHECK(sel.at("node") == "display");
    CHECK(sel.at("properties").at(0) == "text");
    CHECK(s.phase() == Phase::asserting);

    // The pane swallows gestures: the app does not see them and nothing is recorded.
    auto swallowed = s.gesture({{"t", 30}, {"type", "click"}, {"x", 45}, {"y", 585}});
    CHECK(swallowed.at("intercepted") == true);
    CHECK(s.tree().at("root").at("children").at(0).at("text") == "5");
    CHECK_THROWS_AS(s.key(KeyType::close), PhaseError);
    CHECK_THROWS_AS(s.assert_auto(1, 1), PhaseError);

    s.assert_properties(135, 585); // drag to "="
    auto committed = s.assert_commit({{"property", "clickable"}});
    CHECK(committed.at("selector").at("value") == "equals");
    CHECK(s.phase() == Phase::recording);

    s.assert_begin(180, 60);
    s.assert_cancel();
    auto autos = s.assert_auto(180, 60, 40);
    CHECK(autos.size() == 2);

    auto trace = s.stop().get<RecordedTrace>();
    CHECK(s.phase() == Phase::stopped);
    REQUIRE(trace.actions.size() == 4);
    CHECK(std::holds_alternative<InteractionDef>(trace.actions[0]));
    for (std::size_t i = 1; i < 4; ++i) {
        CHECK(std::holds_alternative<AssertionDef>(trace.actions[i]));
    }
    CHECK(trace.name == "x");

    // A new session may begin after stop, with fresh state.
    s.start("y");
    CHECK(s.tree().at("root").at("children").at(0).at("text") == "0");

    std::set<std::string> types;
    for (auto const& m : messages) {
        types.insert(m.at("type").get<std::string>());
    }
    CHECK(types == std::set<std::string>{"tree", "highlight", "phase"});
}

TEST_CASE("http endpoints") {
    LiveServer live("calculator", "mdpi-480x800");
    auto& c = live.client;
    using http_driver::get;
    using http_driver::post;

    CHECK(get(c, "/session/tree").status == 409);
    CHECK(post(c, "/session/assert/commit", {{"property", "text"}}).status == 409);
    CHECK(post(c, "/session/start").status == 200);
    CHECK(post(c, "/session/start").status == 409);
    CHECK(get(c, "/session/tree").body.at("screen").at("r") == 480);
    CHECK(get(c, "/session/status").body.at("phase") == "recording");
    CHECK(post(c, "/session/gesture", {{"t", 1}, {"type", "warp"}}).status == 400);
    CHECK(post(c, "/session/gesture", {{"t", 1}, {"type", "click"}, {"x", 9000}, {"y", 1}}).status == 422);
    CHECK(post(c, "/session/key", {{"key", "sideways"}}).status == 400);
    CHECK(post(c, "/session/assert/commit", {{"property", "text"}}).status == 409);
    CHECK(post(c, "/session/assert/begin", {{"x", 180}, {"y", 60}}).status == 200);
    CHECK(post(c, "/session/gesture", {{"t", 2}, {"type", "click"}, {"x", 135}, {"y", 365}})
              .body.at("intercepted") == true);
    CHECK(post(c, "/session/assert/commit", {{"property", "sibling"}}).status == 422);
    CHECK(post(c, "/session/assert/commit", {{"property", "text"}}).status == 200);
    auto stopped = post(c, "/session/stop");
    CHECK(stopped.status == 200);
    CHECK(stopped.body.at("actions").size() == 1);
    CHECK(post(c, "/session/stop").status == 409);
}

TEST_CASE("event stream pushes snapshots") {
    LiveServer live("calculator", "mdpi-480x800");
    http_driver::post(live.client, "/session/start");

    std::vector<nlohmann::json> received;
    std::atomic<bool> connected{false};
    std::thread reader([&] {
        httplib::Client sse("127.0.0.1", live.server.port());
        std::string buffer;
        sse.Get("/session/events", [&](char const* data, std::size_t n) {
            connected = true;
            buffer.append(data, n);
            std::size_t end;
            while ((end = buffer.find("\n\n")) != std::string::npos) {
                auto chunk = buffer.substr(0, end);
                buffer.erase(0, end + 2);
                if (chunk.rfind("data: ", 0) == 0) {
                    received.push_back(nlohmann::json::parse(chunk.substr(6)));
                }
            }
            // phase + tree on connect, then tree, highlight, phase.
            return received.size() < 5;
        });
    });
    for (int i = 0; i < 200 && !connected; ++i) {
        std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    REQUIRE(connected);
    http_driver::post(live.client, "/session/gesture", {{"t", 1}, {"type", "click"}, {"x", 135}, {"y", 365}});
    http_driver::post(live.client, "/session/assert/begin", {{"x", 180}, {"y", 60}});
    reader.join();

    REQUIRE(received.size() >= 5);
    CHECK(received[0].at("type") == "phase");
    CHECK(received[1].at("type") == "tree");
    CHECK(received[2].at("type") == "tree");
    CHECK(received[2].at("payload").at("root").at("children").at(0).at("text") == "5");
    CHECK(received[3].at("type") == "highlight");
    CHECK(received[3].at("payload").at("rect") == nlohmann::json{{"l", 0}, {"t", 0}, {"r", 360}, {"b", 120}});
    CHECK(received[4].at("payload").at("phase") == "asserting");
}

TEST_CASE("service and headless paths record the same traces") {
    for (auto [app, log] : {std::pair{"calculator", "gestures/divide_by_zero.jsonl"},
                            std::pair{"settings", "gestures/settings_tour.jsonl"}}) {
        CAPTURE(app);
        auto headless = record(app, "mdpi-480x800", log, "same");
        LiveServer live(app, "mdpi-480x800");
        auto served = http_driver::replay(live.client, fixtures::path(log), "same").get<RecordedTrace>();
        CHECK(served == headless.trace);
        CHECK(serialize_trace(served) == serialize_trace(headless.trace));
    }
}

TEST_CASE("command line") {
    TempDir tmp;
    auto const app = fixtures::path("apps/calculator.json");
    auto const mdpi = fixtures::path("devices/mdpi-480x800.json");
    auto const log = fixtures::path("gestures/divide_by_zero.jsonl");

    REQUIRE(cli("record --app " + app + " --device " + mdpi + " --gestures " + log + " --out " + (tmp / "t.json")) == 0);
    CHECK(fixtures::read("golden/divide_by_zero.trace.json") == [&] {
        std::ifstream in(tmp / "t.json");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }());
    REQUIRE(cli("generate --trace " + (tmp / "t.json") + " --emit espresso --out " + (tmp / "T.java")) == 0);
    REQUIRE(cli("generate --trace " + (tmp / "t.json") + " --emit ir --out " + (tmp / "t.ir.json")) == 0);
    CHECK(cli("generate --trace " + (tmp / "t.json") + " --emit kotlin --out " + (tmp / "x")) == 2);
    write(tmp / "broken.json", "{");
    CHECK(cli("generate --trace " + (tmp / "broken.json") + " --emit ir --out " + (tmp / "x")) == 2);
    CHECK(cli("generate --emit ir") == 2);
    CHECK(cli("") == 2);

    std::string clean;
    for (auto name : fixtures::clean_devices) {
        clean += " --device " + fixtures::path("devices/" + std::string(name) + ".json");
    }
    auto run = [&](std::string const& script, std::string const& extra) {
        return cli("run --script " + script + " --app " + app + clean + extra + " --out " + (tmp / "report.json"));
    };
    CHECK(run(tmp / "t.ir.json", "") == 0);
    CHECK(run(tmp / "t.ir.json", " --device " + fixtures::path("devices/quirk-extra-bottom.json")) == 3);
    auto report = exec::report_from_json(nlohmann::json::parse(std::ifstream(tmp / "report.json")));
    CHECK(report.results.back().outcome == exec::Outcome::error);
    CHECK(report.results.back().failing_step == std::optional<std::size_t>(4));

    write(tmp / "false.ir.json", gen::emit_ir(scripts::false_assertion()));
    CHECK(run(tmp / "false.ir.json", "") == 1);
    CHECK(cli("run --script " + (tmp / "t.ir.json") + " --app " + (tmp / "absent.json") + clean) == 2);
}
