#include "restql/backend.hpp"

#include "restql/errors.hpp"

#include <httplib.h>

#include <chrono>
#include <thread>

namespace restql {

namespace {

using nlohmann::json;

std::vector<std::string> split_segments(const std::string& path) {
    std::vector<std::string> out;
    std::string segment;
    for (char c : path) {
        if (c == '/') {
            if (!segment.empty()) {
                out.push_back(segment);
                segment.clear();
            }
        } else {
            segment.push_back(c);
        }
    }
    if (!segment.empty()) {
        out.push_back(segment);
    }
    return out;
}

bool is_placeholder(const std::string& segment) {
    return segment.size() >= 2 && segment.front() == '{' && segment.back() == '}';
}

std::string url_encode(const std::string& s) {
    static const char* hex = "0123456789ABCDEF";
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '.' || c == '_' || c == '~') {
            out.push_back(static_cast<char>(c));
        } else {
            out.push_back('%');
            out.push_back(hex[c >> 4]);
            out.push_back(hex[c & 0xF]);
        }
    }
    return out;
}

} // namespace

bool path_template_matches(const std::string& path_template, const std::string& path) {
    auto want = split_segments(path_template);
    auto have = split_segments(path);
    if (want.size() != have.size()) {
        return false;
    }
    for (std::size_t i = 0; i < want.size(); ++i) {
        if (is_placeholder(want[i])) {
            continue;
        }
        if (want[i] != have[i]) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Fixtures
// ---------------------------------------------------------------------------

FixtureSet load_fixtures(const std::string& document) {
    json root = json::parse(document, nullptr, false);
    if (root.is_discarded() || !root.is_object()) {
        throw IngestError("fixture file must be a JSON object keyed by "
                          "\"<METHOD> <path-template>\"");
    }
    FixtureSet out;
    for (const auto& [key, value] : root.items()) {
        auto space = key.find(' ');
        if (space == std::string::npos ||
            !http_method_from_string(key.substr(0, space)).has_value()) {
            throw IngestError("bad fixture key \"" + key + "\"", key);
        }
        if (!value.is_object()) {
            throw IngestError("fixture entry must be an object", key);
        }
        for (const auto& [k, _] : value.items()) {
            if (k != "status" && k != "body" && k != "latency_ms") {
                throw IngestError("unknown fixture entry key \"" + k + "\"", key);
            }
        }
        FixtureEntry entry;
        entry.status = value.value("status", 200);
        entry.body = value.value("body", json{});
        entry.latency_ms = value.value("latency_ms", 0);
        if (entry.latency_ms < 0) {
            throw IngestError("latency_ms must be non-negative", key);
        }
        out[key] = std::move(entry);
    }
    return out;
}

json fixtures_to_json(const FixtureSet& fixtures) {
    json out = json::object();
    for (const auto& [key, entry] : fixtures) {
        json e;
        e["status"] = entry.status;
        e["body"] = entry.body;
        if (entry.latency_ms > 0) {
            e["latency_ms"] = entry.latency_ms;
        }
        out[key] = std::move(e);
    }
    return out;
}

FixtureBackend::FixtureBackend(FixtureSet fixtures) : fixtures_(std::move(fixtures)) {
    for (const auto& [key, entry] : fixtures_) {
        if (entry.latency_ms < 0) {
            throw ConfigError("fixture latency must be non-negative: " + key);
        }
    }
}

BackendResponse FixtureBackend::invoke(const BackendCallData& call) const {
    invocations_.fetch_add(1);
    const std::string method = to_string(call.method);
    for (const auto& [key, entry] : fixtures_) {
        auto space = key.find(' ');
        if (key.substr(0, space) != method) {
            continue;
        }
        if (!path_template_matches(key.substr(space + 1), call.path)) {
            continue;
        }
        if (entry.latency_ms > 0) {
            std::this_thread::sleep_for(std::chrono::milliseconds(entry.latency_ms));
        }
        return {entry.status, entry.body};
    }
    return {404, json{{"error", "no fixture for " + method + " " + call.path}}};
}

// ---------------------------------------------------------------------------
// HTTP
// ---------------------------------------------------------------------------

HttpBackend::HttpBackend(std::string base_url, int timeout_ms)
    : base_url_(std::move(base_url)), timeout_ms_(timeout_ms) {
    if (timeout_ms_ <= 0) {
        throw ConfigError("http backend timeout must be positive");
    }
    while (!base_url_.empty() && base_url_.back() == '/') {
        base_url_.pop_back();
    }
}

BackendResponse HttpBackend::invoke(const BackendCallData& call) const {
    httplib::Client client(base_url_);
    client.set_connection_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
    client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);

    std::string target;
    for (const auto& segment : split_segments(call.path)) {
        target += "/" + url_encode(segment);
    }
    if (target.empty()) {
        target = "/";
    }
    bool first = true;
    for (const auto& [key, value] : call.query) {
        target += first ? "?" : "&";
        first = false;
        target += url_encode(key) + "=" + url_encode(value);
    }

    httplib::Headers headers;
    for (const auto& [name, value] : call.headers) {
        headers.emplace(name, value);
    }

    httplib::Result result;
    const std::string body = call.body ? call.body->dump() : "";
    switch (call.method) {
    case HttpMethod::Get:
        result = client.Get(target, headers);
        break;
    case HttpMethod::Post:
        result = client.Post(target, headers, body, "application/json");
        break;
    case HttpMethod::Put:
        result = client.Put(target, headers, body, "application/json");
        break;
    case HttpMethod::Patch:
        result = client.Patch(target, headers, body, "application/json");
        break;
    case HttpMethod::Delete:
        result = call.body ? client.Delete(target, headers, body, "application/json")
                           : client.Delete(target, headers);
        break;
    }
    if (!result) {
        throw TransportError("backend " + base_url_ + " unreachable: " +
                             httplib::to_string(result.error()));
    }
    BackendResponse response;
    response.status = result->status;
    if (!result->body.empty()) {
        json parsed = json::parse(result->body, nullptr, false);
        response.body = parsed.is_discarded() ? json(result->body) : std::move(parsed);
    }
    return response;
}

} // namespace restql
