#pragma once

#include "restql/api_surface.hpp"
#include "restql/backend.hpp"

#include <string>
#include <vector>

namespace restql {

/// Under-fetching benchmark settings: a dependent call chain of the given
/// length, a per-call injected latency standing in for network round-trip
/// cost, and the number of measured trials (one warm-up round is discarded).
struct BenchConfig {
    int chain_length = 5;
    int latency_ms = 50;
    int trials = 5;
};

struct BenchRow {
    int chain_length = 0;
    double rest_ms = 0.0;    // mean RTT of N dependent REST calls
    double graphql_ms = 0.0; // mean RTT of one nested GraphQL request
    double ratio = 0.0;      // rest_ms / graphql_ms
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

/// Runs the benchmark: a fixture REST server answers per-step endpoints
/// with injected latency, while the embedded gateway resolves the same
/// chain through one in-memory data acquisition. For each chain length
/// 1..N the REST client issues the dependent calls sequentially and the
/// GraphQL client sends one nested query; both RTTs are measured with a
/// monotonic clock and averaged over the trials.
BenchReport run_bench(const BenchConfig& config);

std::string format_bench_report(const BenchReport& report);

/// The chain API used by the benchmark, as a plugin-produced surface: a
/// shallow per-step endpoint (forcing N calls) plus a recursive chain
/// endpoint the gateway serves in one trip.
ApiSurface bench_chain_surface();

/// Canned responses for the chain: one per-step entry and one nested chain
/// entry, each carrying the injected latency.
FixtureSet bench_chain_fixtures(int chain_length, int latency_ms);

/// Nested selection of the given depth over the chain endpoint.
std::string bench_chain_query(int depth);

} // namespace restql
