#include "restql/apiir.hpp"

#include "restql/errors.hpp"
#include "restql/plugin.hpp"

#include "../support/test_support.hpp"

#include <doctest.h>

#include <random>

using namespace restql;
using restql::test::read_fixture;

TEST_CASE("the blog document loads into two operations") {
    ApiSurface surface = load_apiir(read_fixture("blog.apiir.json"));
    REQUIRE(surface.services.size() == 1);
    REQUIRE(surface.services[0].operations.size() == 2);

    const SourceOperation& get = surface.services[0].operations[0];
    CHECK(get.name == "getArticle");
    CHECK(get.http_method == HttpMethod::Get);
    CHECK(get.path == "/api/articles/{id}");
    REQUIRE(get.params.size() == 1);
    CHECK(get.params[0].location == ParamLocation::Path);
    CHECK_FALSE(get.params[0].required);
    CHECK(get.location.file == "ArticleController.java");
    CHECK(get.location.line == 9);

    const SourceOperation& add = surface.services[0].operations[1];
    CHECK(add.name == "addArticle");
    CHECK(add.http_method == HttpMethod::Post);
    REQUIRE(add.params.size() == 1);
    CHECK(add.params[0].location == ParamLocation::Body);

    CHECK(surface.type_decls.count("com.sopromadze.blogapi.model.Article") == 1);
}

TEST_CASE("empty services load to an empty surface") {
    ApiSurface surface = load_apiir(R"({"apiirVersion": "1", "services": []})");
    CHECK(surface.operation_count() == 0);
    CHECK(surface.type_decls.empty());
}

TEST_CASE("documents violating surface invariants are rejected") {
    const std::string two_bodies = R"({
      "apiirVersion": "1",
      "services": [{
        "namespace": "a.Svc",
        "operations": [{
          "name": "f", "httpMethod": "POST", "path": "/f",
          "params": [
            {"name": "x", "type": {"kind": "primitive", "name": "string"}, "location": "body"},
            {"name": "y", "type": {"kind": "primitive", "name": "string"}, "location": "body"}
          ],
          "returns": {"kind": "void"},
          "location": {"file": "Svc.java", "line": 1}
        }]
      }]
    })";
    CHECK_THROWS_WITH_AS(load_apiir(two_bodies),
                         doctest::Contains("multiple-body-params"), IngestError);

    const std::string stray_path_param = R"({
      "apiirVersion": "1",
      "services": [{
        "namespace": "a.Svc",
        "operations": [{
          "name": "f", "httpMethod": "GET", "path": "/f",
          "params": [
            {"name": "id", "type": {"kind": "primitive", "name": "int"}, "location": "path"}
          ],
          "returns": {"kind": "void"},
          "location": {"file": "Svc.java", "line": 1}
        }]
      }]
    })";
    CHECK_THROWS_WITH_AS(load_apiir(stray_path_param),
                         doctest::Contains("path-param-not-in-path"), IngestError);
}

TEST_CASE("strict schema: versions, unknown keys, wildcards") {
    CHECK_THROWS_AS(load_apiir("not json at all"), IngestError);
    CHECK_THROWS_WITH_AS(load_apiir(R"({"services": []})"),
                         doctest::Contains("apiirVersion"), IngestError);
    CHECK_THROWS_WITH_AS(load_apiir(R"({"apiirVersion": "2", "services": []})"),
                         doctest::Contains("unsupported apiirVersion"), IngestError);
    CHECK_THROWS_WITH_AS(load_apiir(R"({"apiirVersion": "1", "services": [], "extra": 1})"),
                         doctest::Contains("unknown key"), IngestError);

    const std::string wildcard = R"({
      "apiirVersion": "1",
      "services": [{
        "namespace": "a.Svc",
        "operations": [{
          "name": "f", "httpMethod": "GET", "path": "/f",
          "returns": {"kind": "named", "name": "a.Box", "typeArgs": [{"kind": "named", "name": "?"}]},
          "location": {"file": "Svc.java", "line": 1}
        }]
      }]
    })";
    CHECK_THROWS_WITH_AS(load_apiir(wildcard), doctest::Contains("wildcard"), IngestError);
}

TEST_CASE("errors carry JSON paths") {
    const std::string bad = R"({
      "apiirVersion": "1",
      "services": [{"namespace": "a.Svc", "operations": [{"name": "f"}]}]
    })";
    try {
        load_apiir(bad);
        FAIL("expected IngestError");
    } catch (const IngestError& e) {
        CHECK(e.locator() == "/services/0/operations/0");
    }
}

TEST_CASE("canonical serialization round-trips every bundled fixture") {
    for (const char* name :
         {"blog.apiir.json", "generics.apiir.json", "conflicts.apiir.json",
          "mapvoid.apiir.json", "mitigation.apiir.json", "recursion.apiir.json"}) {
        const std::string raw = read_fixture(name);
        ApiSurface surface = load_apiir(raw);
        const std::string canonical = nlohmann::json::parse(raw).dump();
        CHECK(serialize_apiir(surface).dump() == canonical);
    }
}

TEST_CASE("loading is pure") {
    const std::string raw = read_fixture("generics.apiir.json");
    CHECK(load_apiir(raw) == load_apiir(raw));
}

TEST_CASE("generated surfaces survive a serialize/load round trip") {
    std::mt19937 rng(424242);
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); };
    for (int round = 0; round < 25; ++round) {
        ApiSurface surface;
        SourceService service;
        service.namespace_name = "gen.Svc" + std::to_string(round);
        int ops = 1 + pick(3);
        for (int i = 0; i < ops; ++i) {
            SourceOperation op;
            op.name = "op" + std::to_string(i);
            op.http_method = pick(2) == 0 ? HttpMethod::Get : HttpMethod::Post;
            op.path = "/x/" + std::to_string(i);
            op.location = {"Gen.java", i + 1};
            switch (pick(4)) {
            case 0: op.return_type = src_primitive("long"); break;
            case 1: op.return_type = src_list(src_primitive("string", "date-time")); break;
            case 2:
                op.return_type = src_map(src_primitive("int"), src_primitive("boolean"));
                break;
            default: op.return_type = src_void(); break;
            }
            if (pick(2) == 0) {
                SourceParam p;
                p.name = "q";
                p.location = ParamLocation::Query;
                p.required = pick(2) == 0;
                p.type = src_primitive("string");
                op.params.push_back(std::move(p));
            }
            service.operations.push_back(std::move(op));
        }
        surface.services.push_back(std::move(service));
        surface.metadata.plugin = "apiir";

        ApiSurface reloaded = load_apiir(serialize_apiir(surface).dump());
        CHECK(reloaded == surface);
    }
}

TEST_CASE("plugin registry registers and lists plugins") {
    PluginRegistry registry = PluginRegistry::with_builtin_plugins();
    CHECK(registry.find("apiir") != nullptr);
    CHECK(registry.find("openapi") != nullptr);
    CHECK(registry.find("missing") == nullptr);
    CHECK(registry.names() == std::vector<std::string>{"apiir", "openapi"});

    CHECK_THROWS_AS(registry.register_plugin(std::make_shared<ApiIrPlugin>()), ConfigError);

    const IngestionPlugin* plugin = registry.find("apiir");
    CHECK(plugin->name() == "apiir");
}
