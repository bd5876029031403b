// Microbenchmarks for the hot pipeline stages: ingestion, processing,
// translation, SDL printing, request parsing, and fixture-backed execution.

#include "restql/apiir.hpp"
#include "restql/backend.hpp"
#include "restql/executor.hpp"
#include "restql/generator.hpp"
#include "restql/openapi.hpp"
#include "restql/processor.hpp"
#include "restql/translator.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

namespace {

using namespace restql;

std::string read_fixture(const std::string& name) {
    std::ifstream in(std::string(RESTQL_FIXTURE_DIR) + "/" + name, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

ProcessorConfig blog_config() {
    ProcessorConfig config;
    config.wrapper_names = {"org.springframework.http.ResponseEntity"};
    return config;
}

void BM_LoadApiIr(benchmark::State& state) {
    const std::string doc = read_fixture("blog.apiir.json");
    for (auto _ : state) {
        benchmark::DoNotOptimize(load_apiir(doc));
    }
}
BENCHMARK(BM_LoadApiIr);

void BM_ParseOpenApi(benchmark::State& state) {
    const std::string doc = read_fixture("petclinic.openapi.json");
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_openapi(doc, OpenApiFormat::Json));
    }
}
BENCHMARK(BM_ParseOpenApi);

void BM_Process(benchmark::State& state) {
    ApiSurface surface = load_apiir(read_fixture("blog.apiir.json"));
    ProcessorConfig config = blog_config();
    for (auto _ : state) {
        benchmark::DoNotOptimize(process(surface, config));
    }
}
BENCHMARK(BM_Process);

void BM_Translate(benchmark::State& state) {
    ApiSurface surface = load_apiir(read_fixture("blog.apiir.json"));
    DefModel model = process(surface, blog_config()).model;
    for (auto _ : state) {
        benchmark::DoNotOptimize(translate(model));
    }
}
BENCHMARK(BM_Translate);

void BM_PrintSdl(benchmark::State& state) {
    ApiSurface surface = load_apiir(read_fixture("blog.apiir.json"));
    SchemaDoc schema = translate(process(surface, blog_config()).model);
    for (auto _ : state) {
        benchmark::DoNotOptimize(print_sdl(schema));
    }
}
BENCHMARK(BM_PrintSdl);

void BM_ParseRequest(benchmark::State& state) {
    const std::string query =
        R"(query Fetch($id: Long) { getArticle(id: $id) { id title body author } })";
    for (auto _ : state) {
        benchmark::DoNotOptimize(parse_request(query));
    }
}
BENCHMARK(BM_ParseRequest);

void BM_ExecuteFixture(benchmark::State& state) {
    ApiSurface surface = load_apiir(read_fixture("blog.apiir.json"));
    DefModel model = process(surface, blog_config()).model;
    SchemaDoc schema = translate(model);
    BindingManifest manifest = generate_bindings(model, schema);
    FixtureBackend backend(load_fixtures(read_fixture("backends/blog.fixtures.json")));
    RequestDoc doc = parse_request("query { getArticle(id: 10) { author title } }");
    const nlohmann::json variables = nlohmann::json::object();
    for (auto _ : state) {
        benchmark::DoNotOptimize(execute(doc, variables, schema, manifest, backend));
    }
}
BENCHMARK(BM_ExecuteFixture);

} // namespace

BENCHMARK_MAIN();
