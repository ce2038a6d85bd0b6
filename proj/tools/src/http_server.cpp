#include "tracecast/tools/http_server.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <thread>

#include <httplib.h>

#include "tracecast/errors.hpp"

namespace tracecast::tools {

namespace {

// Queue between the service's publish callback and one streaming response.
struct Channel {
    std::mutex mutex;
    std::condition_variable cv;
    std::deque<std::string> messages;
};

void reply(httplib::Response& res, int status, nlohmann::json const& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

nlohmann::json parse_body(httplib::Request const& req) {
    if (req.body.empty()) {
        return nlohmann::json::object();
    }
    try {
        return nlohmann::json::parse(req.body);
    } catch (nlohmann::json::exception const& e) {
        throw ParseError(std::string("request body: ") + e.what());
    }
}

std::optional<std::int64_t> optional_time(nlohmann::json const& body) {
    if (auto it = body.find("t"); it != body.end() && !it->is_null()) {
        return it->get<std::int64_t>();
    }
    return std::nullopt;
}

} // namespace

struct HttpServer::Impl {
    RecordingService& service;
    httplib::Server server;
    std::thread worker;
    std::atomic<bool> stopping{false};
    int bound_port = -1;

    explicit Impl(RecordingService& s) : service(s) {}

    template <typename F>
    void route_post(std::string const& path, F handler) {
        server.Post(path, [this, handler](httplib::Request const& req, httplib::Response& res) {
            guarded(res, [&] { reply(res, 200, handler(parse_body(req))); });
        });
    }

    template <typename F>
    void guarded(httplib::Response& res, F&& body) {
        try {
            body();
        } catch (PhaseError const& e) {
            reply(res, 409, {{"error", e.what()}});
        } catch (RequestError const& e) {
            reply(res, 422, {{"error", e.what()}});
        } catch (ParseError const& e) {
            reply(res, 400, {{"error", e.what()}});
        } catch (nlohmann::json::exception const& e) {
            reply(res, 400, {{"error", e.what()}});
        } catch (std::exception const& e) {
            reply(res, 500, {{"error", e.what()}});
        }
    }

    void install_routes() {
        server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                    {"Access-Control-Allow-Headers", "Content-Type"}});
        server.Options(R"(/session/.*)", [](httplib::Request const&, httplib::Response& res) {
            res.status = 204;
        });

        server.Get("/session/tree", [this](httplib::Request const&, httplib::Response& res) {
            guarded(res, [&] { reply(res, 200, service.tree()); });
        });
        server.Get("/session/status", [this](httplib::Request const&, httplib::Response& res) {
            guarded(res, [&] { reply(res, 200, service.status()); });
        });
        route_post("/session/start", [this](nlohmann::json const& b) {
            return service.start(b.value("name", std::string()));
        });
        route_post("/session/gesture", [this](nlohmann::json const& b) { return service.gesture(b); });
        route_post("/session/key", [this](nlohmann::json const& b) {
            return service.key(key_type_from_string(b.at("key").get<std::string>()), optional_time(b));
        });
        route_post("/session/assert/begin", [this](nlohmann::json const& b) {
            return service.assert_begin(b.at("x").get<int>(), b.at("y").get<int>(), optional_time(b));
        });
        route_post("/session/assert/properties", [this](nlohmann::json const& b) {
            return service.assert_properties(b.at("x").get<int>(), b.at("y").get<int>());
        });
        route_post("/session/assert/commit",
                   [this](nlohmann::json const& b) { return service.assert_commit(b); });
        route_post("/session/assert/cancel",
                   [this](nlohmann::json const&) { return service.assert_cancel(); });
        route_post("/session/assert/auto", [this](nlohmann::json const& b) {
            return service.assert_auto(b.at("x").get<int>(), b.at("y").get<int>(), optional_time(b));
        });
        route_post("/session/stop", [this](nlohmann::json const&) { return service.stop(); });

        server.Get("/session/events", [this](httplib::Request const&, httplib::Response& res) {
            auto channel = std::make_shared<Channel>();
            auto push = [channel](nlohmann::json const& m) {
                {
                    std::lock_guard lock(channel->mutex);
                    channel->messages.push_back("data: " + m.dump() + "\n\n");
                }
                channel->cv.notify_one();
            };
            // Late joiners start from the current snapshot.
            push({{"type", "phase"}, {"payload", {{"phase", to_string(service.phase())}}}});
            try {
                push({{"type", "tree"}, {"payload", service.tree()}});
            } catch (PhaseError const&) {
            }
            auto id = service.subscribe(push);
            res.set_header("Cache-Control", "no-cache");
            res.set_chunked_content_provider(
                "text/event-stream",
                [this, channel](std::size_t, httplib::DataSink& sink) {
                    std::unique_lock lock(channel->mutex);
                    channel->cv.wait_for(lock, std::chrono::milliseconds(200), [&] {
                        return !channel->messages.empty() || stopping.load();
                    });
                    if (stopping) {
                        return false;
                    }
                    while (!channel->messages.empty()) {
                        auto m = std::move(channel->messages.front());
                        channel->messages.pop_front();
                        if (!sink.write(m.data(), m.size())) {
                            return false;
                        }
                    }
                    return true;
                },
                [this, id](bool) { service.unsubscribe(id); });
        });
    }
};

HttpServer::HttpServer(RecordingService& service) : impl_(std::make_unique<Impl>(service)) {
    impl_->install_routes();
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(std::string const& host, int port) {
    if (port == 0) {
        impl_->bound_port = impl_->server.bind_to_any_port(host);
    } else {
        impl_->bound_port = impl_->server.bind_to_port(host, port) ? port : -1;
    }
    return impl_->bound_port;
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::start() {
    impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
}

void HttpServer::stop() {
    impl_->stopping = true;
    impl_->server.stop();
    if (impl_->worker.joinable()) {
        impl_->worker.join();
    }
}

int HttpServer::port() const { return impl_->bound_port; }

} // namespace tracecast::tools
