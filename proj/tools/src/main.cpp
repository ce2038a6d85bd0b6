// tracecast: record, generate, run and serve from the command line.

#include <cstdlib>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "tracecast/errors.hpp"
#include "tracecast/executor.hpp"
#include "tracecast/testgen.hpp"
#include "tracecast/tools/gesture_log.hpp"
#include "tracecast/tools/http_server.hpp"

namespace fs = std::filesystem;
using namespace tracecast;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_error = 3;

std::string read_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(std::string const& path, std::string const& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) {
        throw ParseError("cannot write '" + path + "'");
    }
}

int default_port() {
    if (char const* env = std::getenv("TRACECAST_PORT")) {
        try {
            return std::stoi(env);
        } catch (std::exception const&) {
            std::cerr << "warning: ignoring TRACECAST_PORT='" << env << "'\n";
        }
    }
    return 8765;
}

oracle::PropertyRegistry registry_from(std::string const& path) {
    return path.empty() ? oracle::PropertyRegistry::builtin() : oracle::PropertyRegistry::load(path);
}

struct RecordArgs {
    std::string app, device, gestures, out, name, registry;
};

int cmd_record(RecordArgs const& a) {
    auto app = std::make_shared<sim::AppSpec const>(sim::load_app_spec(a.app));
    auto device = sim::load_device_profile(a.device);
    auto commands = tools::load_gesture_log(a.gestures);
    tools::RecordOptions options;
    options.name = a.name.empty() ? fs::path(a.gestures).stem().string() : a.name;
    options.registry = registry_from(a.registry);
    auto outcome = tools::record_headless(app, device, commands, options);
    for (auto const& w : outcome.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    write_file(a.out, serialize_trace(outcome.trace));
    std::cout << "recorded " << outcome.trace.actions.size() << " actions to " << a.out << "\n";
    return exit_ok;
}

struct GenerateArgs {
    std::string trace, emit, out;
    bool retain_time = false;
};

int cmd_generate(GenerateArgs const& a) {
    auto trace = parse_trace(read_file(a.trace));
    auto script = gen::generate(trace, a.retain_time);
    write_file(a.out, a.emit == "ir" ? gen::emit_ir(script) : gen::emit_espresso(script));
    std::cout << "generated " << gen::count_actions(script) << " statements";
    if (a.retain_time) {
        std::cout << " and " << gen::count_pauses(script) << " pauses";
    }
    std::cout << " to " << a.out << "\n";
    return exit_ok;
}

struct RunArgs {
    std::string script, app, out;
    std::vector<std::string> devices;
    bool sequential = false;
    std::int64_t timeout_ms = 5000;
};

int cmd_run(RunArgs const& a) {
    exec::ExecutionReport report;
    try {
        auto script = gen::parse_ir(read_file(a.script));
        auto app = std::make_shared<sim::AppSpec const>(sim::load_app_spec(a.app));
        std::vector<sim::DeviceProfile> devices;
        for (auto const& d : a.devices) {
            devices.push_back(sim::load_device_profile(d));
        }
        exec::ExecutorOptions options;
        options.parallel = !a.sequential;
        options.quiescence_timeout_ms = a.timeout_ms;
        report = exec::run_all(script, app, devices, options);
    } catch (ParseError const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (ConfigError const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    }
    if (!a.out.empty()) {
        write_file(a.out, exec::to_json(report).dump(2) + "\n");
    }
    std::cout << exec::summary_text(report);
    if (report.errors > 0) {
        return exit_error;
    }
    return report.failures > 0 ? exit_failure : exit_ok;
}

struct ServeArgs {
    std::string app, device, host = "127.0.0.1", registry;
    int port = 0;
};

tools::HttpServer* active_server = nullptr;

int cmd_serve(ServeArgs const& a) {
    auto app = std::make_shared<sim::AppSpec const>(sim::load_app_spec(a.app));
    tools::RecordingService service(app, sim::load_device_profile(a.device),
                                    registry_from(a.registry));
    tools::HttpServer server(service);
    if (server.bind(a.host, a.port) < 0) {
        std::cerr << "error: cannot bind " << a.host << ":" << a.port << "\n";
        return exit_error;
    }
    std::cout << "serving " << app->package_name << " on http://" << a.host << ":" << server.port()
              << std::endl;
    active_server = &server;
    std::signal(SIGINT, [](int) {
        if (active_server) {
            active_server->stop();
        }
    });
    server.listen();
    active_server = nullptr;
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Record, generate and replay UI tests on simulated devices"};
    cli.require_subcommand(1);

    RecordArgs rec;
    auto* record = cli.add_subcommand("record", "Replay a gesture log and write the recorded trace");
    record->add_option("--app", rec.app, "App spec JSON")->required()->check(CLI::ExistingFile);
    record->add_option("--device", rec.device, "Device profile JSON")->required()->check(CLI::ExistingFile);
    record->add_option("--gestures", rec.gestures, "Gesture log (JSON lines)")->required()->check(CLI::ExistingFile);
    record->add_option("--out", rec.out, "Trace output path")->required();
    record->add_option("--name", rec.name, "Trace name (default: gesture log file stem)");
    record->add_option("--registry", rec.registry, "Relevant-properties JSON")->check(CLI::ExistingFile);

    GenerateArgs gen_args;
    auto* generate = cli.add_subcommand("generate", "Turn a recorded trace into a test script");
    generate->add_option("--trace", gen_args.trace, "Trace JSON")->required();
    generate->add_option("--emit", gen_args.emit, "Output format")
        ->required()
        ->check(CLI::IsMember({"espresso", "ir"}));
    generate->add_flag("--retain-time", gen_args.retain_time, "Insert pauses matching recorded timing");
    generate->add_option("--out", gen_args.out, "Script output path")->required();

    RunArgs run_args;
    auto* run = cli.add_subcommand("run", "Execute a script (IR) on one or more device profiles");
    run->add_option("--script", run_args.script, "Script in IR form")->required();
    run->add_option("--app", run_args.app, "App spec JSON")->required();
    run->add_option("--device", run_args.devices, "Device profile JSON (repeatable)")->required();
    run->add_option("--out", run_args.out, "Report JSON output path");
    run->add_flag("--sequential", run_args.sequential, "Run devices one after another");
    run->add_option("--timeout-ms", run_args.timeout_ms, "UI quiescence timeout per step");

    ServeArgs serve_args;
    serve_args.port = default_port();
    auto* serve = cli.add_subcommand("serve", "Expose a live recording session over HTTP");
    serve->add_option("--app", serve_args.app, "App spec JSON")->required()->check(CLI::ExistingFile);
    serve->add_option("--device", serve_args.device, "Device profile JSON")->required()->check(CLI::ExistingFile);
    serve->add_option("--port", serve_args.port, "Port (default: $TRACECAST_PORT or 8765)");
    serve->add_option("--host", serve_args.host, "Bind address");
    serve->add_option("--registry", serve_args.registry, "Relevant-properties JSON")->check(CLI::ExistingFile);

    try {
        cli.parse(argc, argv);
    } catch (CLI::CallForHelp const& e) {
        return cli.exit(e);
    } catch (CLI::ParseError const& e) {
        cli.exit(e);
        return exit_usage;
    }

    try {
        if (*record) {
            return cmd_record(rec);
        }
        if (*generate) {
            return cmd_generate(gen_args);
        }
        if (*run) {
            return cmd_run(run_args);
        }
        return cmd_serve(serve_args);
    } catch (ParseError const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (ConfigError const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (std::exception const& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
}
