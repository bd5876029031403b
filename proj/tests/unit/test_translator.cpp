#include "restql/translator.hpp"

#include "restql/errors.hpp"

#include "../support/test_support.hpp"

#include <doctest.h>

using namespace restql;
using restql::test::corpus_fixture;
using restql::test::read_fixture;
using restql::test::run_pipeline;

TEST_CASE("blog schema prints byte-identical to its golden SDL") {
    auto run = run_pipeline(corpus_fixture("blog"));
    CHECK(print_sdl(run.schema) == read_fixture("golden/blog.graphql"));
}

TEST_CASE("petclinic schema prints byte-identical to its golden SDL") {
    auto run = run_pipeline(corpus_fixture("petclinic"));
    CHECK(print_sdl(run.schema) == read_fixture("golden/petclinic.graphql"));
}

TEST_CASE("schemas without write operations have no Mutation block") {
    auto run = run_pipeline(corpus_fixture("recursion"));
    CHECK(run.schema.mutation_root.empty());
    const std::string sdl = print_sdl(run.schema);
    CHECK(sdl.find("type Mutation") == std::string::npos);
    CHECK(sdl.find("type Query") != std::string::npos);
}

TEST_CASE("map-derived fields print as entry lists") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    const std::string sdl = print_sdl(run.schema);
    CHECK(sdl.find("getTags: [IntStringEntry]") != std::string::npos);
    // Expected entry declaration, authored ahead of the implementation.
    CHECK(sdl.find("type IntStringEntry {\n  key: Int\n  value: String\n}") !=
          std::string::npos);
    CHECK(sdl.find("getAttributes(id: Long!): [StringAddressEntry]") != std::string::npos);
}

TEST_CASE("void outputs become nullable Boolean result fields") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    const GqlField* field = run.schema.find_root_field(Rws::Write, "deleteCustomer");
    REQUIRE(field != nullptr);
    CHECK(to_string(field->type) == "Boolean");
}

TEST_CASE("scalar declarations cover extended and custom scalars") {
    auto run = run_pipeline(corpus_fixture("mapvoid"));
    const std::string sdl = print_sdl(run.schema);
    CHECK(sdl.find("scalar Long\n") != std::string::npos);
    CHECK(sdl.find("scalar PhoneNumber\n") != std::string::npos);

    auto petclinic = run_pipeline(corpus_fixture("petclinic"));
    const std::string pet_sdl = print_sdl(petclinic.schema);
    CHECK(pet_sdl.find("scalar Date\n") != std::string::npos);
    CHECK(pet_sdl.find("scalar DateTime\n") != std::string::npos);
    CHECK(pet_sdl.find("scalar Double\n") != std::string::npos);
    CHECK(pet_sdl.find("enum PetStatus {\n  available\n  pending\n  sold\n}") !=
          std::string::npos);
}

TEST_CASE("objects used in parameter positions get Input twins") {
    auto run = run_pipeline(corpus_fixture("blog"));
    const GqlTypeDecl* input = run.schema.find("ArticleRequestInput");
    REQUIRE(input != nullptr);
    CHECK(input->kind == GqlTypeKind::InputObject);
    REQUIRE(input->fields.size() == 2);
    CHECK(input->fields[0].name == "title");
    CHECK(to_string(input->fields[0].type) == "String");

    // Nested objects rewrite to their own Input counterparts.
    auto shop = run_pipeline(corpus_fixture("mapvoid"));
    const GqlTypeDecl* new_customer = shop.schema.find("NewCustomerInput");
    REQUIRE(new_customer != nullptr);
    bool saw_address = false;
    for (const auto& f : new_customer->fields) {
        if (f.name == "address") {
            CHECK(to_string(f.type) == "AddressInput");
            saw_address = true;
        }
        if (f.name == "name") {
            CHECK(to_string(f.type) == "String!");
        }
    }
    CHECK(saw_address);
    CHECK(shop.schema.find("AddressInput") != nullptr);
}

TEST_CASE("to_input_type rewrites list-valued object fields") {
    DefModel model;
    ObjectDef address;
    address.name = "Address";
    address.source_name = "a.Address";
    address.fields.push_back({"street", Box<TypeDef>(literal(BuiltinScalar::String)), true, ""});
    model.types["Address"] = TypeDef{address};

    ObjectDef shipment;
    shipment.name = "Shipment";
    shipment.source_name = "a.Shipment";
    shipment.fields.push_back(
        {"addresses", Box<TypeDef>(list_of(type_ref("Address"))), true, ""});

    GqlTypeDecl input = to_input_type(shipment, model);
    CHECK(input.name == "ShipmentInput");
    REQUIRE(input.fields.size() == 1);
    CHECK(to_string(input.fields[0].type) == "[AddressInput]");
}

TEST_CASE("interfaces emit as object types when nothing implements them") {
    auto run = run_pipeline(corpus_fixture("recursion"));
    const GqlTypeDecl* shape = run.schema.find("Shape");
    REQUIRE(shape != nullptr);
    CHECK(shape->kind == GqlTypeKind::Object);
    const std::string sdl = print_sdl(run.schema);
    CHECK(sdl.find("type Shape {") != std::string::npos);
}

TEST_CASE("validate_schema flags the structural rule set") {
    SchemaDoc schema;
    schema.query_root.push_back({"probe", {}, gql_named("Marker")});
    schema.types["Marker"] = {GqlTypeKind::Object, "Marker", {}, {}};
    auto violations = validate_schema(schema);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "empty-object");
    CHECK(violations[0].subject == "Marker");

    SchemaDoc misuse;
    misuse.types["Out"] = {GqlTypeKind::Object,
                           "Out",
                           {{"x", {}, gql_named("Int")}},
                           {}};
    misuse.query_root.push_back(
        {"probe", {{"arg", gql_named("Out")}}, gql_named("Int")});
    auto misuse_violations = validate_schema(misuse);
    REQUIRE(misuse_violations.size() == 1);
    CHECK(misuse_violations[0].rule == "input-position-misuse");

    SchemaDoc dangling;
    dangling.query_root.push_back({"probe", {}, gql_named("Ghost")});
    auto dangling_violations = validate_schema(dangling);
    REQUIRE(dangling_violations.size() == 1);
    CHECK(dangling_violations[0].rule == "undefined-reference");

    SchemaDoc empty;
    auto empty_violations = validate_schema(empty);
    REQUIRE(empty_violations.size() == 1);
    CHECK(empty_violations[0].rule == "missing-query-root");

    SchemaDoc bad_name;
    bad_name.query_root.push_back({"probe", {}, gql_named("Int")});
    bad_name.types["Bad-Name"] = {GqlTypeKind::Scalar, "Bad-Name", {}, {}};
    auto bad_name_violations = validate_schema(bad_name);
    REQUIRE(bad_name_violations.size() == 1);
    CHECK(bad_name_violations[0].rule == "bad-name");
}

TEST_CASE("every pipeline schema in the corpus validates cleanly") {
    for (const auto& spec : restql::test::corpus()) {
        INFO(spec.name);
        auto run = run_pipeline(spec);
        CHECK(validate_schema(run.schema).empty());
        auto strict = run_pipeline(spec, ProcessingMode::Strict);
        if (!strict.schema.query_root.empty()) {
            CHECK(validate_schema(strict.schema).empty());
        }
    }
}

TEST_CASE("printed SDL reparses into a structurally equal schema") {
    for (const auto& spec : restql::test::corpus()) {
        INFO(spec.name);
        auto run = run_pipeline(spec);
        SchemaDoc reparsed = parse_sdl(print_sdl(run.schema));
        CHECK(reparsed == run.schema);
        // And printing again is byte-stable.
        CHECK(print_sdl(reparsed) == print_sdl(run.schema));
    }
}

TEST_CASE("the SDL parser reports malformed input with positions") {
    CHECK_THROWS_AS(parse_sdl("type {"), SyntaxError);
    CHECK_THROWS_AS(parse_sdl("not sdl at all"), SyntaxError);
    CHECK_THROWS_AS(parse_sdl("type T { f: }"), SyntaxError);

    SchemaDoc parsed = parse_sdl("type Marker {}\ntype Query {\n  probe: Marker\n}\n");
    CHECK(parsed.types.count("Marker") == 1);
    auto violations = validate_schema(parsed);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rule == "empty-object");
}
