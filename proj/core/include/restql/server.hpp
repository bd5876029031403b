#pragma once

#include "restql/backend.hpp"
#include "restql/executor.hpp"
#include "restql/generator.hpp"
#include "restql/translator.hpp"

#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <vector>

namespace restql {

struct ServeOptions {
    int port = 0; // 0 binds an ephemeral port
    std::vector<std::string> passthrough_headers;
    int request_latency_ms = 0; // injected per request; bench-only knob
};

/// Embedded GraphQL endpoint: POST /graphql executes requests against the
/// schema + manifest over a backend adapter; GET /healthz answers "ok".
/// Parse and validation failures answer 400 with a GraphQL-style errors
/// body before any backend call.
class GatewayServer {
public:
    GatewayServer(SchemaDoc schema, BindingManifest manifest,
                  std::shared_ptr<const BackendAdapter> backend, ServeOptions options);
    ~GatewayServer();

    GatewayServer(const GatewayServer&) = delete;
    GatewayServer& operator=(const GatewayServer&) = delete;

    /// Binds and serves on a background thread. Throws Error when the port
    /// cannot be bound. Returns the bound port.
    int start();

    /// Serves on the calling thread until stop() arrives from elsewhere.
    /// Throws Error when the port cannot be bound.
    void run();

    void stop();

    /// Asks the listen loop to exit without joining; safe to call from a
    /// signal handler while run() blocks.
    void request_stop();

    int port() const { return bound_port_; }

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int bound_port_ = 0;
};

/// Serves a fixture set as a plain REST server: each "<METHOD> <template>"
/// entry answers matching requests with its canned body after its injected
/// latency. Drives the under-fetching benchmark's REST side and EQ3 tests.
class FixtureRestServer {
public:
    explicit FixtureRestServer(FixtureSet fixtures, int port = 0);
    ~FixtureRestServer();

    FixtureRestServer(const FixtureRestServer&) = delete;
    FixtureRestServer& operator=(const FixtureRestServer&) = delete;

    int start();
    void stop();

    int port() const { return bound_port_; }
    long request_count() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    int bound_port_ = 0;
};

} // namespace restql
