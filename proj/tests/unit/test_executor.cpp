#include "restql/executor.hpp"

#include "restql/backend.hpp"
#include "restql/errors.hpp"

#include "../support/query_fuzz.hpp"
#include "../support/test_support.hpp"

#include <doctest.h>

#include <random>

using namespace restql;
using nlohmann::json;
using restql::test::corpus_fixture;
using restql::test::read_fixture;
using restql::test::run_pipeline;

TEST_CASE("parse_request handles the canonical article query") {
    RequestDoc doc = parse_request(R"(query { getArticle(id: "10") { author title } })");
    CHECK(doc.kind == RequestKind::Query);
    REQUIRE(doc.selections.size() == 1);
    const Selection& root = doc.selections[0];
    CHECK(root.field == "getArticle");
    REQUIRE(root.args.size() == 1);
    CHECK(root.args[0].first == "id");
    CHECK(root.args[0].second.kind == ReqValue::Kind::String);
    CHECK(root.args[0].second.text == "10");
    REQUIRE(root.subselections.size() == 2);
    CHECK(root.subselections[0].field == "author");
    CHECK(root.subselections[1].field == "title");
}

TEST_CASE("anonymous multi-query requests parse") {
    RequestDoc doc = parse_request("{ a b }");
    CHECK(doc.kind == RequestKind::Query);
    REQUIRE(doc.selections.size() == 2);
    CHECK(doc.selections[0].field == "a");
    CHECK(doc.selections[1].field == "b");
}

TEST_CASE("syntax errors carry precise positions") {
    try {
        parse_request("query { f(x: }");
        FAIL("expected SyntaxError");
    } catch (const SyntaxError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 14);
    }
}

TEST_CASE("unsupported constructs are rejected at parse time") {
    CHECK_THROWS_WITH_AS(parse_request("query { ...f }"),
                         doctest::Contains("unsupported construct"), SyntaxError);
    CHECK_THROWS_WITH_AS(parse_request("fragment F on T { x }"),
                         doctest::Contains("unsupported construct"), SyntaxError);
    CHECK_THROWS_WITH_AS(parse_request("subscription { ticks }"),
                         doctest::Contains("unsupported construct"), SyntaxError);
    CHECK_THROWS_WITH_AS(parse_request("query { f @skip(if: true) }"),
                         doctest::Contains("unsupported construct"), SyntaxError);
    CHECK_THROWS_AS(parse_request("query { a } query { b }"), SyntaxError);
}

TEST_CASE("variable definitions parse with defaults and aliases work") {
    RequestDoc doc = parse_request(
        "query Fetch($id: Long! = 7, $tags: [String]) { art: getArticle(id: $id) { title } }");
    CHECK(doc.operation_name == std::optional<std::string>("Fetch"));
    REQUIRE(doc.variables.size() == 2);
    CHECK(doc.variables[0].name == "id");
    CHECK(to_string(doc.variables[0].type) == "Long!");
    REQUIRE(doc.variables[0].default_value.has_value());
    CHECK(doc.variables[0].default_value->kind == ReqValue::Kind::Int);
    CHECK(doc.selections[0].alias == "art");
    CHECK(doc.selections[0].field == "getArticle");
}

TEST_CASE("validate_request accepts the lifecycle query and rejects bad shapes") {
    auto run = run_pipeline(corpus_fixture("blog"));
    const SchemaDoc& schema = run.schema;

    CHECK(validate_request(
              parse_request(R"(query { getArticle(id: "10") { author title } })"), schema)
              .empty());

    auto unknown = validate_request(
        parse_request("query { getArticle(id: 1) { wibble } }"), schema);
    REQUIRE(unknown.size() == 1);
    CHECK(unknown[0].rule == "unknown-field");
    CHECK(unknown[0].subject == "Article.wibble");

    auto missing_subsel =
        validate_request(parse_request("query { getArticle(id: 1) }"), schema);
    REQUIRE(missing_subsel.size() == 1);
    CHECK(missing_subsel[0].rule == "missing-subselection");

    auto leaf_subsel = validate_request(
        parse_request("query { getArticle(id: 1) { title { x } } }"), schema);
    REQUIRE(leaf_subsel.size() == 1);
    CHECK(leaf_subsel[0].rule == "leaf-subselection");

    auto unknown_arg = validate_request(
        parse_request("query { getArticle(nope: 1) { title } }"), schema);
    REQUIRE(unknown_arg.size() == 1);
    CHECK(unknown_arg[0].rule == "unknown-argument");

    auto introspection = validate_request(parse_request("query { __schema }"), schema);
    REQUIRE(introspection.size() == 1);
    CHECK(introspection[0].rule == "unsupported-construct");
}

TEST_CASE("validate_request enforces non-null arguments") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    auto missing = validate_request(parse_request("mutation { deleteCustomer }"), run.schema);
    REQUIRE(missing.size() == 1);
    CHECK(missing[0].rule == "missing-argument");

    auto null_arg = validate_request(
        parse_request("mutation { deleteCustomer(id: null) }"), run.schema);
    REQUIRE(null_arg.size() == 1);
    CHECK(null_arg[0].rule == "null-for-non-null");
}

TEST_CASE("validate_request type-checks variables") {
    auto run = run_pipeline(corpus_fixture("blog"));
    const SchemaDoc& schema = run.schema;

    CHECK(validate_request(
              parse_request("query ($id: Long) { getArticle(id: $id) { title } }"), schema)
              .empty());

    auto mismatch = validate_request(
        parse_request("query ($id: String) { getArticle(id: $id) { title } }"), schema);
    REQUIRE(mismatch.size() == 1);
    CHECK(mismatch[0].rule == "variable-type-mismatch");

    auto undeclared =
        validate_request(parse_request("query { getArticle(id: $id) { title } }"), schema);
    REQUIRE(undeclared.size() == 1);
    CHECK(undeclared[0].rule == "undeclared-variable");

    auto unused = validate_request(
        parse_request("query ($x: Int) { getArticle(id: 1) { title } }"), schema);
    REQUIRE(unused.size() == 1);
    CHECK(unused[0].rule == "unused-variable");
}

TEST_CASE("validate_request flags duplicate arguments and bad variable types") {
    auto run = run_pipeline(corpus_fixture("blog"));
    auto dup = validate_request(
        parse_request("query { getArticle(id: 1, id: 2) { title } }"), run.schema);
    REQUIRE(dup.size() == 1);
    CHECK(dup[0].rule == "duplicate-argument");

    auto bad_var = validate_request(
        parse_request("query ($a: Article) { getArticle(id: 1) { title } }"), run.schema);
    REQUIRE(bad_var.size() == 2); // output type as variable + unused
    CHECK(bad_var[0].rule == "bad-variable-type");
}

TEST_CASE("validate_request checks input object shapes") {
    auto run = run_pipeline(corpus_fixture("blog"));
    auto bad_field = validate_request(
        parse_request(R"(mutation { addArticle(articleRequest: {nope: "x"}) { success } })"),
        run.schema);
    REQUIRE(bad_field.size() == 1);
    CHECK(bad_field[0].rule == "unknown-field");

    auto bad_kind = validate_request(
        parse_request(R"(mutation { addArticle(articleRequest: 5) { success } })"),
        run.schema);
    REQUIRE(bad_kind.size() == 1);
    CHECK(bad_kind[0].rule == "bad-argument-value");
}

TEST_CASE("map and entry-list transforms invert each other") {
    CHECK(map_to_entry_list(json{{"1", "a"}}, "Int") ==
          json::array({json{{"key", 1}, {"value", "a"}}}));
    CHECK(entry_list_to_map(json::array({json{{"key", 1}, {"value", "a"}}}), "Int") ==
          json{{"1", "a"}});

    std::mt19937 rng(1234);
    for (int round = 0; round < 200; ++round) {
        json map = json::object();
        const bool int_keys = round % 2 == 0;
        int entries = static_cast<int>(rng() % 32);
        for (int i = 0; i < entries; ++i) {
            std::string key = int_keys ? std::to_string(static_cast<int>(rng() % 10000))
                                       : "k" + std::to_string(rng() % 10000);
            map[key] = static_cast<int>(rng() % 1000);
        }
        const std::string scalar = int_keys ? "Int" : "String";
        CHECK(entry_list_to_map(map_to_entry_list(map, scalar), scalar) == map);
    }
}

TEST_CASE("execute resolves the article lifecycle example") {
    auto run = run_pipeline(corpus_fixture("blog"));
    FixtureBackend backend(load_fixtures(read_fixture("backends/blog.fixtures.json")));

    RequestDoc doc = parse_request(R"(query { getArticle(id: "10") { author title } })");
    REQUIRE(validate_request(doc, run.schema).empty());
    auto response = execute(doc, json::object(), run.schema, run.manifest, backend);

    // Only the requested fields appear, in request order.
    json expected;
    expected["data"]["getArticle"]["author"] = "alice";
    expected["data"]["getArticle"]["title"] = "Migrating to GraphQL";
    CHECK(json(response) == expected);
    CHECK(response["data"]["getArticle"].size() == 2);

    auto keys = response["data"]["getArticle"].items().begin();
    CHECK(keys.key() == "author");
}

TEST_CASE("per-field isolation: one failing root leaves siblings intact") {
    auto run = run_pipeline(corpus_fixture("blog"));
    FixtureSet fixtures = load_fixtures(read_fixture("backends/blog.fixtures.json"));
    fixtures["GET /api/articles/{id}"].status = 500;
    FixtureBackend backend(std::move(fixtures));

    RequestDoc doc = parse_request(
        R"(mutation { add: addArticle(articleRequest: {title: "t", body: "b"}) { success } })");
    auto ok = execute(doc, json::object(), run.schema, run.manifest, backend);
    CHECK(ok["data"]["add"]["success"] == true);

    RequestDoc mixed = parse_request("{ a: getArticle(id: 1) { title } }");
    auto failed = execute(mixed, json::object(), run.schema, run.manifest, backend);
    CHECK(failed["data"]["a"].is_null());
    REQUIRE(failed.contains("errors"));
    CHECK(failed["errors"].size() == 1);
}

TEST_CASE("execution is deterministic over fixtures") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    FixtureBackend backend(load_fixtures(read_fixture("backends/mapvoid.fixtures.json")));
    RequestDoc doc = parse_request(
        "query { getCustomer(id: 1) { id name tags { key value } address { street city } } }");
    auto a = execute(doc, json::object(), run.schema, run.manifest, backend);
    auto b = execute(doc, json::object(), run.schema, run.manifest, backend);
    CHECK(a.dump() == b.dump());
}

TEST_CASE("permuting root selections permutes data keys identically") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    FixtureBackend backend(load_fixtures(read_fixture("backends/mapvoid.fixtures.json")));
    auto fwd = execute(parse_request("{ a: getTags { key } b: getMatrix }"), json::object(),
                       run.schema, run.manifest, backend);
    auto rev = execute(parse_request("{ b: getMatrix a: getTags { key } }"), json::object(),
                       run.schema, run.manifest, backend);
    std::vector<std::string> fwd_keys, rev_keys;
    for (const auto& [k, _] : fwd["data"].items()) {
        fwd_keys.push_back(k);
    }
    for (const auto& [k, _] : rev["data"].items()) {
        rev_keys.push_back(k);
    }
    CHECK(fwd_keys == std::vector<std::string>{"a", "b"});
    CHECK(rev_keys == std::vector<std::string>{"b", "a"});
    CHECK(json(fwd["data"]["a"]) == json(rev["data"]["a"]));
    CHECK(json(fwd["data"]["b"]) == json(rev["data"]["b"]));
}

TEST_CASE("null path arguments error instead of leaking placeholders") {
    auto run = run_pipeline(corpus_fixture("blog"));
    FixtureBackend backend(load_fixtures(read_fixture("backends/blog.fixtures.json")));
    const long before = backend.invocation_count();
    // getArticle's id is nullable, so omitting it passes validation; the
    // executor still cannot build the backend path without it.
    RequestDoc doc = parse_request("{ getArticle { title } }");
    REQUIRE(validate_request(doc, run.schema).empty());
    auto response = execute(doc, json::object(), run.schema, run.manifest, backend);
    CHECK(response["data"]["getArticle"].is_null());
    REQUIRE(response.contains("errors"));
    CHECK(backend.invocation_count() == before);
}

TEST_CASE("transport failure on every root raises TransportError") {
    auto run = run_pipeline(corpus_fixture("blog"));

    struct DownBackend : BackendAdapter {
        BackendResponse invoke(const BackendCallData&) const override {
            throw TransportError("connection refused");
        }
    } backend;

    RequestDoc doc = parse_request("{ getArticle(id: 1) { title } }");
    CHECK_THROWS_AS(execute(doc, json::object(), run.schema, run.manifest, backend),
                    TransportError);
}

TEST_CASE("pruning property over random selections") {
    using restql::test::QueryFuzzer;
    std::mt19937 seeds(5150);
    int checked = 0;
    for (const char* name : {"blog", "mapvoid", "petclinic", "recursion"}) {
        auto run = run_pipeline(corpus_fixture(name));
        QueryFuzzer fuzzer(run.schema, run.manifest, seeds());
        FixtureBackend backend(fuzzer.synthesize_fixtures());
        for (int i = 0; i < 15; ++i) {
            std::string request = fuzzer.random_request();
            INFO(name, ": ", request);
            RequestDoc doc = parse_request(request);
            auto violations = validate_request(doc, run.schema);
            REQUIRE_MESSAGE(violations.empty(), to_string(violations.front()));
            auto response =
                execute(doc, json::object(), run.schema, run.manifest, backend);
            REQUIRE_FALSE(response.contains("errors"));
            for (const auto& sel : doc.selections) {
                CHECK(QueryFuzzer::check_pruned(response["data"][sel.alias],
                                                sel.subselections));
            }
            ++checked;
        }
    }
    CHECK(checked == 60);
}

TEST_CASE("fixture backends match path templates and count invocations") {
    FixtureSet fixtures;
    fixtures["GET /a/{x}/b"] = {200, json{{"ok", true}}, 0};
    FixtureBackend backend(std::move(fixtures));

    BackendCallData call;
    call.method = HttpMethod::Get;
    call.path = "/a/42/b";
    CHECK(backend.invoke(call).status == 200);
    call.path = "/a/42/c";
    CHECK(backend.invoke(call).status == 404);
    CHECK(backend.invocation_count() == 2);

    CHECK_THROWS_AS(load_fixtures("[1,2]"), IngestError);
    CHECK_THROWS_AS(load_fixtures(R"({"WAT /x": {"body": 1}})"), IngestError);
    CHECK_THROWS_AS(load_fixtures(R"({"GET /x": {"latency_ms": -5}})"), IngestError);
}
