#pragma once

#include "restql/defmodel.hpp"

#include <json.hpp>

#include <atomic>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace restql {

struct BackendResponse {
    int status = 0;
    nlohmann::json body;
};

/// One REST invocation as the executor issues it.
struct BackendCallData {
    HttpMethod method = HttpMethod::Get;
    std::string path; // concrete, placeholders substituted
    std::vector<std::pair<std::string, std::string>> query;
    std::optional<nlohmann::json> body;
    std::vector<std::pair<std::string, std::string>> headers;
};

/// Where resolved fields fetch their data: a live REST backend over HTTP or
/// an in-memory fixture set. Implementations are safe to share across
/// concurrent request handlers.
class BackendAdapter {
public:
    virtual ~BackendAdapter() = default;

    /// Throws TransportError when the backend is unreachable; HTTP-level
    /// failures come back as status codes.
    virtual BackendResponse invoke(const BackendCallData& call) const = 0;
};

/// Canned response for one "<METHOD> <path-template>" key.
struct FixtureEntry {
    int status = 200;
    nlohmann::json body;
    int latency_ms = 0; // injected per call; must be >= 0

    friend bool operator==(const FixtureEntry&, const FixtureEntry&) = default;
};

using FixtureSet = std::map<std::string, FixtureEntry>;

/// Parses a fixture file: a JSON object keyed by "<METHOD> <path-template>"
/// mapping to { "status": int, "body": json, "latency_ms": int }. Throws
/// IngestError on malformed entries.
FixtureSet load_fixtures(const std::string& document);

nlohmann::json fixtures_to_json(const FixtureSet& fixtures);

/// In-memory backend resolving calls against canned responses. Path
/// templates match segment-wise; "{name}" placeholders match any single
/// segment. Latency injection sleeps per call and is concurrency-safe.
class FixtureBackend final : public BackendAdapter {
public:
    explicit FixtureBackend(FixtureSet fixtures);

    BackendResponse invoke(const BackendCallData& call) const override;

    /// Total number of invoke() calls, for tests asserting that invalid
    /// requests never reach the backend.
    long invocation_count() const { return invocations_.load(); }

    const FixtureSet& fixtures() const { return fixtures_; }

private:
    FixtureSet fixtures_;
    mutable std::atomic<long> invocations_{0};
};

/// Live HTTP backend: requests go to base_url with the configured timeout;
/// passthrough headers ride along unmodified.
class HttpBackend final : public BackendAdapter {
public:
    explicit HttpBackend(std::string base_url, int timeout_ms = 15000);

    BackendResponse invoke(const BackendCallData& call) const override;

private:
    std::string base_url_;
    int timeout_ms_;
};

/// True when the template matches the concrete path segment-for-segment.
bool path_template_matches(const std::string& path_template, const std::string& path);

} // namespace restql
