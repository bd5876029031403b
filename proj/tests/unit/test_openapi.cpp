#include "restql/openapi.hpp"

#include "restql/errors.hpp"

#include "../support/test_support.hpp"

#include <doctest.h>

#include <set>

using namespace restql;
using restql::test::read_fixture;

namespace {

const SourceOperation* find_op(const ApiSurface& surface, const std::string& name) {
    for (const auto& service : surface.services) {
        for (const auto& op : service.operations) {
            if (op.name == name) {
                return &op;
            }
        }
    }
    return nullptr;
}

} // namespace

TEST_CASE("pet clinic document maps one operation per path/method pair") {
    ApiSurface surface =
        parse_openapi(read_fixture("petclinic.openapi.json"), OpenApiFormat::Json);
    CHECK(surface.operation_count() == 5);

    const SourceOperation* get_pet = find_op(surface, "getPet");
    REQUIRE(get_pet != nullptr);
    CHECK(get_pet->http_method == HttpMethod::Get);
    CHECK(get_pet->path == "/pets/{petId}");
    REQUIRE(get_pet->params.size() == 1);
    CHECK(get_pet->params[0].required);
    CHECK(get_pet->params[0].type ==
          src_primitive("integer", std::optional<std::string>("int64")));
    CHECK(get_pet->return_type == src_named("Pet"));
    CHECK(get_pet->location.file == "/pets/{petId}");

    // 204-only responses are void.
    const SourceOperation* del = find_op(surface, "deletePet");
    REQUIRE(del != nullptr);
    CHECK(del->return_type == src_void());
}

TEST_CASE("component schemas become declarations with formats preserved") {
    ApiSurface surface =
        parse_openapi(read_fixture("petclinic.openapi.json"), OpenApiFormat::Json);
    const TypeDecl& pet = surface.type_decls.at("Pet");
    REQUIRE(pet.kind == DeclKind::Object);

    auto field = [&](const std::string& name) -> const SourceField& {
        for (const auto& f : pet.fields) {
            if (f.name == name) {
                return f;
            }
        }
        throw std::runtime_error("missing field " + name);
    };
    CHECK(field("id").type == src_primitive("integer", std::optional<std::string>("int64")));
    CHECK(field("weight").type ==
          src_primitive("number", std::optional<std::string>("double")));
    CHECK(field("birthDate").type ==
          src_primitive("string", std::optional<std::string>("date")));
    CHECK(field("name").required);

    // Inline enums synthesize named declarations.
    CHECK(field("status").type == src_named("PetStatus"));
    const TypeDecl& status = surface.type_decls.at("PetStatus");
    CHECK(status.kind == DeclKind::Enum);
    CHECK(status.values == std::vector<std::string>{"available", "pending", "sold"});

    // additionalProperties becomes a string-keyed map.
    CHECK(field("tags").type == src_map(src_primitive("string"), src_primitive("string")));

    const TypeDecl& owner = surface.type_decls.at("Owner");
    bool saw_date_time = false;
    for (const auto& f : owner.fields) {
        if (f.name == "lastVisit") {
            CHECK(f.type == src_primitive("string", std::optional<std::string>("date-time")));
            saw_date_time = true;
        }
    }
    CHECK(saw_date_time);
}

TEST_CASE("documents with zero paths produce empty surfaces") {
    ApiSurface surface = parse_openapi(
        R"({"openapi": "3.0.0", "info": {"title": "t", "version": "1"}, "paths": {}})",
        OpenApiFormat::Json);
    CHECK(surface.operation_count() == 0);
}

TEST_CASE("unresolved refs report their pointer") {
    const std::string doc = R"({
      "openapi": "3.0.0",
      "paths": {
        "/x": {"get": {"operationId": "getX", "responses": {"200": {
          "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Missing"}}}
        }}}}
      }
    })";
    CHECK_THROWS_WITH_AS(parse_openapi(doc, OpenApiFormat::Json),
                         doctest::Contains("#/components/schemas/Missing"), IngestError);
}

TEST_CASE("version gating") {
    CHECK_THROWS_WITH_AS(
        parse_openapi(R"({"swagger": "2.0", "paths": {}})", OpenApiFormat::Json),
        doctest::Contains("unsupported version"), IngestError);
    CHECK_THROWS_WITH_AS(
        parse_openapi(R"({"openapi": "4.0.0", "paths": {}})", OpenApiFormat::Json),
        doctest::Contains("unsupported version"), IngestError);
}

TEST_CASE("YAML documents normalize to the same surface model") {
    ApiSurface surface =
        parse_openapi(read_fixture("travels.openapi.yaml"), OpenApiFormat::Yaml);
    CHECK(surface.operation_count() == 3);

    // allOf composition merges into one object declaration.
    const TypeDecl& travel = surface.type_decls.at("Travel");
    REQUIRE(travel.kind == DeclKind::Object);
    std::set<std::string> names;
    for (const auto& f : travel.fields) {
        names.insert(f.name);
        if (f.name == "orderNumber") {
            CHECK(f.required);
        }
    }
    CHECK(names == std::set<std::string>{"id", "createdAt", "orderNumber", "amount",
                                         "startDate", "extra"});

    // oneOf schemas become unknown declaration stubs, not silent widenings.
    CHECK(surface.type_decls.at("ExtraInfo").kind == DeclKind::Unknown);

    const SourceOperation* create = find_op(surface, "createTravel");
    REQUIRE(create != nullptr);
    REQUIRE(create->params.size() == 1);
    CHECK(create->params[0].location == ParamLocation::Body);
    CHECK(create->params[0].required);
}

TEST_CASE("derived operation names when operationId is absent") {
    const std::string doc = R"({
      "openapi": "3.0.0",
      "paths": {
        "/pets/{id}": {"get": {"parameters": [
            {"name": "id", "in": "path", "required": true, "schema": {"type": "integer"}}
          ],
          "responses": {"204": {"description": "no content"}}}}
      }
    })";
    ApiSurface surface = parse_openapi(doc, OpenApiFormat::Json);
    REQUIRE(surface.operation_count() == 1);
    CHECK(surface.services[0].operations[0].name == "getPetsId");
}

TEST_CASE("unsupported parameter styles error") {
    const std::string doc = R"({
      "openapi": "3.0.0",
      "paths": {
        "/x": {"get": {"operationId": "getX", "parameters": [
            {"name": "filter", "in": "query", "style": "deepObject", "schema": {"type": "string"}}
          ],
          "responses": {"204": {"description": "done"}}}}
      }
    })";
    CHECK_THROWS_WITH_AS(parse_openapi(doc, OpenApiFormat::Json),
                         doctest::Contains("style"), IngestError);
}

TEST_CASE("allOf cycles error while plain recursive refs are allowed") {
    const std::string cyclic = R"({
      "openapi": "3.0.0",
      "paths": {
        "/a": {"get": {"operationId": "getA", "responses": {"200": {
          "content": {"application/json": {"schema": {"$ref": "#/components/schemas/A"}}}
        }}}}
      },
      "components": {"schemas": {
        "A": {"allOf": [{"$ref": "#/components/schemas/B"}]},
        "B": {"allOf": [{"$ref": "#/components/schemas/A"}]}
      }}
    })";
    CHECK_THROWS_WITH_AS(parse_openapi(cyclic, OpenApiFormat::Json),
                         doctest::Contains("cyclic ref through allOf"), IngestError);

    const std::string recursive = R"({
      "openapi": "3.0.0",
      "paths": {
        "/node": {"get": {"operationId": "getNode", "responses": {"200": {
          "content": {"application/json": {"schema": {"$ref": "#/components/schemas/Node"}}}
        }}}}
      },
      "components": {"schemas": {
        "Node": {"type": "object", "properties": {
          "label": {"type": "string"},
          "next": {"$ref": "#/components/schemas/Node"}
        }}
      }}
    })";
    ApiSurface surface = parse_openapi(recursive, OpenApiFormat::Json);
    const TypeDecl& node = surface.type_decls.at("Node");
    REQUIRE(node.fields.size() == 2);
    CHECK(node.fields[1].type == src_named("Node"));
}

TEST_CASE("map_openapi_schema preserves scalar formats") {
    using nlohmann::json;
    CHECK(map_openapi_schema(json{{"type", "integer"}, {"format", "int64"}}) ==
          src_primitive("integer", std::optional<std::string>("int64")));
    CHECK(map_openapi_schema(json{{"type", "string"}}) == src_primitive("string"));
    CHECK(map_openapi_schema(json{{"type", "string"}, {"format", "date-time"}}) ==
          src_primitive("string", std::optional<std::string>("date-time")));
    CHECK(map_openapi_schema(
              json{{"type", "object"}, {"additionalProperties", json{{"type", "string"}}}}) ==
          src_map(src_primitive("string"), src_primitive("string")));
    CHECK_THROWS_WITH_AS(
        map_openapi_schema(json{{"oneOf", json::array({json{{"type", "string"}}})}}),
        doctest::Contains("unsupported construct"), IngestError);
}

TEST_CASE("two loads of a document produce identical surfaces") {
    const std::string raw = read_fixture("travels.openapi.yaml");
    ApiSurface a = parse_openapi(raw, OpenApiFormat::Yaml);
    ApiSurface b = parse_openapi(raw, OpenApiFormat::Yaml);
    CHECK(a == b);
}
