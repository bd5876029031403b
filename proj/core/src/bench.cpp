#include "restql/bench.hpp"

#include "restql/apiir.hpp"
#include "restql/errors.hpp"
#include "restql/executor.hpp"
#include "restql/generator.hpp"
#include "restql/processor.hpp"
#include "restql/server.hpp"
#include "restql/translator.hpp"

#include <httplib.h>

#include <chrono>
#include <iomanip>
#include <sstream>

namespace restql {

namespace {

using nlohmann::json;

constexpr const char* kChainApi = R"({
  "apiirVersion": "1",
  "metadata": {"source": "bench-chain"},
  "services": [
    {
      "namespace": "bench.ChainService",
      "operations": [
        {
          "name": "getStep",
          "httpMethod": "GET",
          "path": "/bench/step/{id}",
          "params": [
            {"name": "id", "type": {"kind": "primitive", "name": "int"}, "location": "path"}
          ],
          "returns": {"kind": "named", "name": "bench.ChainStep"},
          "location": {"file": "bench-chain", "line": 1}
        },
        {
          "name": "getChain",
          "httpMethod": "GET",
          "path": "/bench/chain/{id}",
          "params": [
            {"name": "id", "type": {"kind": "primitive", "name": "int"}, "location": "path"}
          ],
          "returns": {"kind": "named", "name": "bench.ChainNode"},
          "location": {"file": "bench-chain", "line": 2}
        }
      ]
    }
  ],
  "typeDecls": {
    "bench.ChainStep": {
      "kind": "object",
      "fields": [
        {"name": "hop", "type": {"kind": "primitive", "name": "int"}},
        {"name": "payload", "type": {"kind": "primitive", "name": "string"}},
        {"name": "nextId", "type": {"kind": "primitive", "name": "int"}}
      ]
    },
    "bench.ChainNode": {
      "kind": "object",
      "fields": [
        {"name": "hop", "type": {"kind": "primitive", "name": "int"}},
        {"name": "payload", "type": {"kind": "primitive", "name": "string"}},
        {"name": "next", "type": {"kind": "named", "name": "bench.ChainNode"}}
      ]
    }
  }
})";

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// N dependent REST calls: each response's nextId feeds the next request.
double measure_rest_chain(httplib::Client& client, int length) {
    auto start = Clock::now();
    int id = 0;
    for (int i = 0; i < length; ++i) {
        auto result = client.Get("/bench/step/" + std::to_string(id));
        if (!result || result->status != 200) {
            throw TransportError("bench REST call failed at hop " + std::to_string(i));
        }
        json body = json::parse(result->body);
        if (body.contains("nextId") && body["nextId"].is_number_integer()) {
            id = body["nextId"].get<int>();
        }
    }
    return ms_since(start);
}

double measure_graphql_chain(httplib::Client& client, const std::string& query) {
    auto start = Clock::now();
    json body{{"query", query}};
    auto result = client.Post("/graphql", body.dump(), "application/json");
    if (!result || result->status != 200) {
        throw TransportError("bench GraphQL call failed");
    }
    json parsed = json::parse(result->body);
    if (!parsed.contains("data") || parsed["data"].is_null()) {
        throw TransportError("bench GraphQL call returned no data");
    }
    return ms_since(start);
}

} // namespace

ApiSurface bench_chain_surface() { return load_apiir(kChainApi); }

FixtureSet bench_chain_fixtures(int chain_length, int latency_ms) {
    FixtureSet fixtures;
    for (int i = 0; i < chain_length; ++i) {
        json step;
        step["hop"] = i;
        step["payload"] = "step-" + std::to_string(i);
        if (i + 1 < chain_length) {
            step["nextId"] = i + 1;
        } else {
            step["nextId"] = nullptr;
        }
        fixtures["GET /bench/step/" + std::to_string(i)] = {200, step, latency_ms};
    }
    json node;
    for (int i = chain_length - 1; i >= 0; --i) {
        json wrapper;
        wrapper["hop"] = i;
        wrapper["payload"] = "step-" + std::to_string(i);
        wrapper["next"] = node;
        node = std::move(wrapper);
    }
    fixtures["GET /bench/chain/0"] = {200, node, latency_ms};
    return fixtures;
}

std::string bench_chain_query(int depth) {
    std::string inner = "{ hop payload }";
    for (int i = 1; i < depth; ++i) {
        inner = "{ hop payload next " + inner + " }";
    }
    return "query { getChain(id: 0) " + inner + " }";
}

BenchReport run_bench(const BenchConfig& config) {
    if (config.chain_length < 1) {
        throw ConfigError("bench chain length must be at least 1");
    }
    if (config.trials < 1) {
        throw ConfigError("bench trials must be at least 1");
    }
    if (config.latency_ms < 0) {
        throw ConfigError("bench latency must be non-negative");
    }

    ApiSurface surface = bench_chain_surface();
    ProcessorConfig proc_config;
    ProcessResult processed = process(surface, proc_config);
    SchemaDoc schema = translate(processed.model);
    auto violations = validate_schema(schema);
    if (!violations.empty()) {
        throw Error("bench schema failed validation: " + to_string(violations.front()));
    }
    BindingManifest manifest = generate_bindings(processed.model, schema);
    FixtureSet fixtures = bench_chain_fixtures(config.chain_length, config.latency_ms);

    FixtureRestServer rest_server(fixtures);
    rest_server.start();
    GatewayServer gateway(schema, manifest, std::make_shared<FixtureBackend>(fixtures),
                          ServeOptions{});
    gateway.start();

    httplib::Client rest_client("127.0.0.1", rest_server.port());
    httplib::Client gql_client("127.0.0.1", gateway.port());
    rest_client.set_read_timeout(60, 0);
    gql_client.set_read_timeout(60, 0);

    BenchReport report;
    for (int length = 1; length <= config.chain_length; ++length) {
        const std::string query = bench_chain_query(length);
        // warm-up round, discarded
        measure_rest_chain(rest_client, length);
        measure_graphql_chain(gql_client, query);

        double rest_total = 0.0;
        double gql_total = 0.0;
        for (int trial = 0; trial < config.trials; ++trial) {
            rest_total += measure_rest_chain(rest_client, length);
            gql_total += measure_graphql_chain(gql_client, query);
        }
        BenchRow row;
        row.chain_length = length;
        row.rest_ms = rest_total / config.trials;
        row.graphql_ms = gql_total / config.trials;
        row.ratio = row.graphql_ms > 0.0 ? row.rest_ms / row.graphql_ms : 0.0;
        report.rows.push_back(row);
    }
    return report;
}

std::string format_bench_report(const BenchReport& report) {
    std::ostringstream out;
    out << "chain  rest_ms    graphql_ms  ratio\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(7) << row.chain_length << std::setw(11) << std::fixed
            << std::setprecision(2) << row.rest_ms << std::setw(12) << row.graphql_ms
            << std::setprecision(2) << row.ratio << "\n";
    }
    return out.str();
}

} // namespace restql
