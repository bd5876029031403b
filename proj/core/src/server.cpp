#include "restql/server.hpp"

#include "restql/errors.hpp"

#include <httplib.h>

#include <atomic>
#include <chrono>

namespace restql {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json error_body(const std::string& message, int line = 0, int column = 0,
                        const std::string& rule = "") {
    ordered_json err;
    err["message"] = message;
    if (line > 0) {
        err["locations"] = ordered_json::array({ordered_json{{"line", line}, {"column", column}}});
    }
    if (!rule.empty()) {
        err["extensions"] = ordered_json{{"rule", rule}};
    }
    ordered_json body;
    body["errors"] = ordered_json::array({std::move(err)});
    return body;
}

} // namespace

// ---------------------------------------------------------------------------
// GatewayServer
// ---------------------------------------------------------------------------

struct GatewayServer::Impl {
    SchemaDoc schema;
    BindingManifest manifest;
    std::shared_ptr<const BackendAdapter> backend;
    ServeOptions options;
    httplib::Server server;
    std::thread thread;
    std::atomic<bool> running{false};

    Impl(SchemaDoc s, BindingManifest m, std::shared_ptr<const BackendAdapter> b,
         ServeOptions o)
        : schema(std::move(s)), manifest(std::move(m)), backend(std::move(b)),
          options(std::move(o)) {
        server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
            res.set_content("ok", "text/plain");
        });
        server.Post("/graphql", [this](const httplib::Request& req, httplib::Response& res) {
            handle_graphql(req, res);
        });
    }

    void handle_graphql(const httplib::Request& req, httplib::Response& res) {
        if (options.request_latency_ms > 0) {
            std::this_thread::sleep_for(
                std::chrono::milliseconds(options.request_latency_ms));
        }
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.is_object() || !body.contains("query") ||
            !body["query"].is_string()) {
            res.status = 400;
            res.set_content(error_body("request body must be a JSON object with a "
                                       "\"query\" string")
                                .dump(),
                            "application/json");
            return;
        }
        RequestDoc doc;
        try {
            doc = parse_request(body["query"].get<std::string>());
        } catch (const SyntaxError& e) {
            res.status = 400;
            res.set_content(error_body(e.what(), e.line(), e.column(), "syntax").dump(),
                            "application/json");
            return;
        }
        auto violations = validate_request(doc, schema);
        if (!violations.empty()) {
            ordered_json errors = ordered_json::array();
            for (const auto& v : violations) {
                ordered_json err;
                err["message"] = to_string(v);
                err["extensions"] = ordered_json{{"rule", v.rule}};
                errors.push_back(std::move(err));
            }
            ordered_json out;
            out["errors"] = std::move(errors);
            res.status = 400;
            res.set_content(out.dump(), "application/json");
            return;
        }
        json variables = json::object();
        if (body.contains("variables") && body["variables"].is_object()) {
            variables = body["variables"];
        }
        std::vector<std::pair<std::string, std::string>> headers;
        for (const auto& name : options.passthrough_headers) {
            if (req.has_header(name)) {
                headers.emplace_back(name, req.get_header_value(name));
            }
        }
        try {
            ordered_json response = execute(doc, variables, schema, manifest, *backend,
                                            headers);
            res.status = 200;
            res.set_content(response.dump(), "application/json");
        } catch (const TransportError& e) {
            res.status = 502;
            res.set_content(error_body(e.what()).dump(), "application/json");
        }
    }
};

GatewayServer::GatewayServer(SchemaDoc schema, BindingManifest manifest,
                             std::shared_ptr<const BackendAdapter> backend,
                             ServeOptions options)
    : impl_(std::make_unique<Impl>(std::move(schema), std::move(manifest),
                                   std::move(backend), std::move(options))) {}

GatewayServer::~GatewayServer() { stop(); }

int GatewayServer::start() {
    if (impl_->options.port == 0) {
        bound_port_ = impl_->server.bind_to_any_port("127.0.0.1");
        if (bound_port_ <= 0) {
            throw Error("could not bind an ephemeral port");
        }
    } else {
        if (!impl_->server.bind_to_port("127.0.0.1", impl_->options.port)) {
            throw Error("could not bind port " + std::to_string(impl_->options.port));
        }
        bound_port_ = impl_->options.port;
    }
    impl_->running = true;
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound_port_;
}

void GatewayServer::run() {
    start();
    impl_->thread.join();
    impl_->running = false;
}

void GatewayServer::stop() {
    if (impl_ && impl_->running.exchange(false)) {
        impl_->server.stop();
        if (impl_->thread.joinable()) {
            impl_->thread.join();
        }
    }
}

void GatewayServer::request_stop() {
    if (impl_) {
        impl_->server.stop();
    }
}

// ---------------------------------------------------------------------------
// FixtureRestServer
// ---------------------------------------------------------------------------

struct FixtureRestServer::Impl {
    FixtureSet fixtures;
    int requested_port;
    httplib::Server server;
    std::thread thread;
    std::atomic<bool> running{false};
    std::atomic<long> requests{0};

    Impl(FixtureSet f, int port) : fixtures(std::move(f)), requested_port(port) {
        auto handler = [this](const httplib::Request& req, httplib::Response& res) {
            requests.fetch_add(1);
            auto method = http_method_from_string(req.method);
            if (!method) {
                res.status = 405;
                return;
            }
            for (const auto& [key, entry] : fixtures) {
                auto space = key.find(' ');
                if (key.substr(0, space) != req.method ||
                    !path_template_matches(key.substr(space + 1), req.path)) {
                    continue;
                }
                if (entry.latency_ms > 0) {
                    std::this_thread::sleep_for(
                        std::chrono::milliseconds(entry.latency_ms));
                }
                res.status = entry.status;
                res.set_content(entry.body.dump(), "application/json");
                return;
            }
            res.status = 404;
            res.set_content(json{{"error", "no fixture for " + req.method + " " + req.path}}
                                .dump(),
                            "application/json");
        };
        const char* pattern = R"(/.*)";
        server.Get(pattern, handler);
        server.Post(pattern, handler);
        server.Put(pattern, handler);
        server.Patch(pattern, handler);
        server.Delete(pattern, handler);
    }
};

FixtureRestServer::FixtureRestServer(FixtureSet fixtures, int port)
    : impl_(std::make_unique<Impl>(std::move(fixtures), port)) {}

FixtureRestServer::~FixtureRestServer() { stop(); }

int FixtureRestServer::start() {
    if (impl_->requested_port == 0) {
        bound_port_ = impl_->server.bind_to_any_port("127.0.0.1");
        if (bound_port_ <= 0) {
            throw Error("could not bind an ephemeral port");
        }
    } else {
        if (!impl_->server.bind_to_port("127.0.0.1", impl_->requested_port)) {
            throw Error("could not bind port " + std::to_string(impl_->requested_port));
        }
        bound_port_ = impl_->requested_port;
    }
    impl_->running = true;
    impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
    impl_->server.wait_until_ready();
    return bound_port_;
}

void FixtureRestServer::stop() {
    if (impl_ && impl_->running.exchange(false)) {
        impl_->server.stop();
        if (impl_->thread.joinable()) {
            impl_->thread.join();
        }
    }
}

long FixtureRestServer::request_count() const { return impl_->requests.load(); }

} // namespace restql
