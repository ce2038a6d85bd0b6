#pragma once

#include <memory>
#include <string>

#include "tracecast/tools/service.hpp"

namespace tracecast::tools {

/// JSON-over-HTTP front end for a RecordingService, plus a server-sent
/// event stream at GET /session/events.
class HttpServer {
public:
    explicit HttpServer(RecordingService& service);
    ~HttpServer();

    HttpServer(HttpServer const&) = delete;
    HttpServer& operator=(HttpServer const&) = delete;

    /// Binds without serving. Port 0 picks a free port. Returns the bound
    /// port, or -1 on failure.
    int bind(std::string const& host, int port);
    // Serves on the calling thread until stop().
    bool listen();
    // Serves on a background thread.
    void start();
    void stop();
    int port() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace tracecast::tools
