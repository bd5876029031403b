#include "restql/bench.hpp"

#include "restql/errors.hpp"
#include "restql/processor.hpp"
#include "restql/translator.hpp"

#include <doctest.h>

using namespace restql;

TEST_CASE("the chain surface converts cleanly") {
    ApiSurface surface = bench_chain_surface();
    CHECK(surface.operation_count() == 2);
    ProcessorConfig config;
    auto result = process(surface, config);
    CHECK(result.model.operations.size() == 2);
    CHECK(validate_schema(translate(result.model)).empty());
}

TEST_CASE("chain fixtures link steps and nest the full chain") {
    FixtureSet fixtures = bench_chain_fixtures(3, 0);
    CHECK(fixtures.size() == 4); // 3 steps + 1 chain
    CHECK(fixtures.at("GET /bench/step/0").body["nextId"] == 1);
    CHECK(fixtures.at("GET /bench/step/2").body["nextId"].is_null());
    const auto& chain = fixtures.at("GET /bench/chain/0").body;
    CHECK(chain["hop"] == 0);
    CHECK(chain["next"]["next"]["hop"] == 2);
}

TEST_CASE("nested queries grow with depth") {
    CHECK(bench_chain_query(1) == "query { getChain(id: 0) { hop payload } }");
    CHECK(bench_chain_query(2) ==
          "query { getChain(id: 0) { hop payload next { hop payload } } }");
}

TEST_CASE("config invariants reject degenerate settings") {
    CHECK_THROWS_AS(run_bench({0, 10, 1}), ConfigError);
    CHECK_THROWS_AS(run_bench({1, 10, 0}), ConfigError);
    CHECK_THROWS_AS(run_bench({1, -1, 1}), ConfigError);
}

TEST_CASE("a small run reports rows for every chain length") {
    BenchConfig config;
    config.chain_length = 2;
    config.latency_ms = 10;
    config.trials = 1;
    BenchReport report = run_bench(config);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].chain_length == 1);
    CHECK(report.rows[1].chain_length == 2);
    // Two dependent REST calls cost roughly twice one latency unit; the
    // GraphQL side pays it once.
    CHECK(report.rows[1].rest_ms > report.rows[1].graphql_ms);
    CHECK(format_bench_report(report).find("chain") == 0);
}
