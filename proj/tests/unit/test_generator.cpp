#include "restql/generator.hpp"

#include "restql/errors.hpp"
#include "restql/executor.hpp"

#include "../support/test_support.hpp"

#include <doctest.h>

#include <set>

using namespace restql;
using restql::test::corpus_fixture;
using restql::test::run_pipeline;

TEST_CASE("blog bindings route schema fields to backend calls") {
    auto run = run_pipeline(corpus_fixture("blog"));
    const BindingManifest& manifest = run.manifest;

    const Binding* get = manifest.find(Rws::Read, "getArticle");
    REQUIRE(get != nullptr);
    CHECK(get->backend.method == HttpMethod::Get);
    CHECK(get->backend.path_template == "/api/articles/{id}");
    REQUIRE(get->backend.param_bindings.size() == 1);
    CHECK(get->backend.param_bindings[0].gql_arg == "id");
    CHECK(get->backend.param_bindings[0].location == ParamLocation::Path);
    CHECK(get->backend.param_bindings[0].source_param == "id");
    CHECK(get->result_plan == "Article");
    // The discarded ResponseEntity wrapper surfaces as a .body extraction.
    CHECK(get->unwrap_steps == std::vector<std::string>{"body"});
    CHECK_FALSE(get->void_result);

    const Binding* add = manifest.find(Rws::Write, "addArticle");
    REQUIRE(add != nullptr);
    CHECK(add->backend.param_bindings[0].location == ParamLocation::Body);
    CHECK(manifest.plan("Article") != nullptr);
    CHECK(manifest.plan("ArticleRequestInput") != nullptr);
}

TEST_CASE("renamed operations keep their original backend identity") {
    auto run = run_pipeline(corpus_fixture("conflicts"));
    const Binding* renamed = run.manifest.find(Rws::Read, "getUsingIntegerReturnsUser");
    REQUIRE(renamed != nullptr);
    CHECK(renamed->backend.path_template == "/users/by-id");
    REQUIRE(renamed->backend.param_bindings.size() == 1);
    CHECK(renamed->backend.param_bindings[0].source_param == "id");
}

TEST_CASE("read-only schemas generate zero mutation bindings") {
    auto run = run_pipeline(corpus_fixture("recursion"));
    for (const auto& b : run.manifest.bindings) {
        CHECK(b.root == Rws::Read);
    }
}

TEST_CASE("binding coverage equals root field count on every fixture") {
    for (const auto& spec : restql::test::corpus()) {
        INFO(spec.name);
        auto run = run_pipeline(spec);
        CHECK(run.manifest.bindings.size() ==
              run.schema.query_root.size() + run.schema.mutation_root.size());
        std::set<std::pair<std::string, std::string>> keys;
        for (const auto& b : run.manifest.bindings) {
            CHECK(keys.insert({to_string(b.root), b.field}).second);
        }
        CHECK(validate_manifest(run.manifest, run.schema).empty());
    }
}

TEST_CASE("void results carry the void flag instead of a plan") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    const Binding* del = run.manifest.find(Rws::Write, "deleteCustomer");
    REQUIRE(del != nullptr);
    CHECK(del->void_result);
    CHECK(del->result_plan.empty());
}

TEST_CASE("map-valued fields get entry transforms in both directions") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));

    const ObjectMappingPlan* customer = run.manifest.plan("Customer");
    REQUIRE(customer != nullptr);
    const MappingStep* tags = customer->step_for("tags");
    REQUIRE(tags != nullptr);
    CHECK(tags->transform.kind == TransformKind::MapToEntryList);
    CHECK(tags->transform.scalar == "Int");

    const Binding* get_tags = run.manifest.find(Rws::Read, "getTags");
    REQUIRE(get_tags != nullptr);
    CHECK(get_tags->result.kind == TransformKind::MapToEntryList);

    // Object-valued maps transform their entries' values through a plan.
    const Binding* attributes = run.manifest.find(Rws::Read, "getAttributes");
    REQUIRE(attributes != nullptr);
    CHECK(attributes->result.kind == TransformKind::MapToEntryList);
    REQUIRE(attributes->result.value.has_value());
    CHECK((**attributes->result.value).kind == TransformKind::Nested);
    CHECK((**attributes->result.value).plan == "Address");
}

TEST_CASE("build_object_mapping: scalar-only objects are all-identity") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    const TypeDef* address = run.processed.model.find_type("Address");
    REQUIRE(address != nullptr);
    ObjectMappingPlan plan =
        build_object_mapping(address->as<ObjectDef>(), run.processed.model);
    REQUIRE(plan.steps.size() == 2);
    for (const auto& step : plan.steps) {
        CHECK(step.transform.kind == TransformKind::Identity);
        CHECK(step.source_field == step.target_field);
    }
}

TEST_CASE("self-referencing objects plan by name without expansion") {
    auto run = run_pipeline(corpus_fixture("recursion"));
    const TypeDef* employee = run.processed.model.find_type("Employee");
    REQUIRE(employee != nullptr);
    ObjectMappingPlan plan =
        build_object_mapping(employee->as<ObjectDef>(), run.processed.model);

    const MappingStep* manager = plan.step_for("manager");
    REQUIRE(manager != nullptr);
    CHECK(manager->transform.kind == TransformKind::Nested);
    CHECK(manager->transform.plan == "Employee");

    // Plan-graph walk: expanding nested references terminates because
    // references are by name, not by inline copies.
    const BindingManifest& manifest = run.manifest;
    std::set<std::string> visited;
    std::vector<std::string> stack = {"Employee"};
    int hops = 0;
    while (!stack.empty() && hops < 1000) {
        ++hops;
        std::string name = stack.back();
        stack.pop_back();
        if (!visited.insert(name).second) {
            continue;
        }
        const ObjectMappingPlan* p = manifest.plan(name);
        REQUIRE(p != nullptr);
        for (const auto& step : p->steps) {
            if (step.transform.kind == TransformKind::Nested) {
                stack.push_back(step.transform.plan);
            }
        }
    }
    CHECK(hops < 1000);
    CHECK(visited.count("Employee") == 1);
}

TEST_CASE("scalar coercion transforms mark 64-bit scalars") {
    auto run = run_pipeline(corpus_fixture("blog"));
    const ObjectMappingPlan* article = run.manifest.plan("Article");
    REQUIRE(article != nullptr);
    const MappingStep* id = article->step_for("id");
    REQUIRE(id != nullptr);
    CHECK(id->transform.kind == TransformKind::ScalarCoerce);
    CHECK(id->transform.scalar == "Long");
}

TEST_CASE("manifests round-trip through JSON byte-identically") {
    for (const auto& spec : restql::test::corpus()) {
        INFO(spec.name);
        auto run = run_pipeline(spec);
        nlohmann::json serialized = to_json(run.manifest);
        BindingManifest reparsed = manifest_from_json(serialized);
        CHECK(reparsed == run.manifest);
        CHECK(to_json(reparsed).dump() == serialized.dump());
        CHECK(serialized["bindingsVersion"] == "1");
    }
    CHECK_THROWS_AS(manifest_from_json(nlohmann::json{{"bindings", nlohmann::json::array()}}),
                    IngestError);
}

TEST_CASE("map-typed parameters travel as inbound entry lists end to end") {
    ApiSurface surface;
    SourceService service;
    service.namespace_name = "m.Svc";
    SourceOperation op;
    op.name = "setLabels";
    op.http_method = HttpMethod::Post;
    op.path = "/labels";
    op.params.push_back({"labels",
                         src_map(src_primitive("int"), src_primitive("string")),
                         ParamLocation::Body, true});
    op.return_type = src_primitive("boolean");
    op.location = {"M.java", 1};
    service.operations.push_back(std::move(op));

    SourceOperation ping; // a Query root field keeps the schema valid
    ping.name = "ping";
    ping.http_method = HttpMethod::Get;
    ping.path = "/ping";
    ping.return_type = src_primitive("string");
    ping.location = {"M.java", 2};
    service.operations.push_back(std::move(ping));
    surface.services.push_back(std::move(service));

    auto result = process(surface, ProcessorConfig{});
    SchemaDoc schema = translate(result.model);
    REQUIRE(validate_schema(schema).empty());
    const GqlField* field = schema.find_root_field(Rws::Write, "setLabels");
    REQUIRE(field != nullptr);
    CHECK(to_string(field->args[0].type) == "[IntStringEntryInput]!");

    BindingManifest manifest = generate_bindings(result.model, schema);
    const Binding* binding = manifest.find(Rws::Write, "setLabels");
    REQUIRE(binding != nullptr);
    CHECK(binding->backend.param_bindings[0].transform.kind ==
          TransformKind::EntryListToMap);

    // The executor turns the entry-list argument back into a JSON map.
    struct Capture : BackendAdapter {
        mutable nlohmann::json body;
        BackendResponse invoke(const BackendCallData& call) const override {
            body = call.body.value_or(nlohmann::json{});
            return {200, true};
        }
    } backend;
    RequestDoc doc = parse_request(
        R"(mutation { setLabels(labels: [{key: 1, value: "a"}, {key: 2, value: "b"}]) })");
    REQUIRE(validate_request(doc, schema).empty());
    auto response = execute(doc, nlohmann::json::object(), schema, manifest, backend);
    CHECK(backend.body == nlohmann::json{{"1", "a"}, {"2", "b"}});
    CHECK(response["data"]["setLabels"] == true);
}

TEST_CASE("schema fields without model counterparts are an error") {
    auto run = run_pipeline(corpus_fixture("blog"));
    SchemaDoc schema = run.schema;
    schema.query_root.push_back({"phantom", {}, gql_named("Article")});
    CHECK_THROWS_AS(generate_bindings(run.processed.model, schema), Error);
}
