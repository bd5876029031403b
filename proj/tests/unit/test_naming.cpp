#include "restql/naming.hpp"

#include "restql/errors.hpp"

#include <doctest.h>

#include <random>

using namespace restql;

TEST_CASE("identifier normalization replaces invalid characters") {
    CHECK(normalize_identifier("com.w.User") == "com_w_User");
    CHECK(normalize_identifier("com.z.User") == "com_z_User");
    CHECK(normalize_identifier("a-b$c") == "a_b_c");
    CHECK(normalize_identifier("Outer$Inner") == "Outer_Inner");
    CHECK(normalize_identifier("3dModel") == "_3dModel");
    CHECK(normalize_identifier("already_fine") == "already_fine");
    CHECK_THROWS_AS(normalize_identifier("$$$"), Error);
    CHECK_THROWS_AS(normalize_identifier(""), Error);
}

TEST_CASE("normalized identifiers always satisfy the GraphQL name grammar") {
    const std::string alphabet = "abcXYZ0123456789.$-/ _";
    std::mt19937 rng(20250810);
    for (int i = 0; i < 300; ++i) {
        std::string name;
        auto len = 1 + rng() % 24;
        for (unsigned k = 0; k < len; ++k) {
            name.push_back(alphabet[rng() % alphabet.size()]);
        }
        try {
            std::string id = normalize_identifier(name);
            CHECK(is_valid_graphql_name(id));
            CHECK(normalize_identifier(name) == id); // deterministic
        } catch (const Error&) {
            // names without any alphanumeric substance are rejected
        }
    }
}

TEST_CASE("simple_name and capitalize") {
    CHECK(simple_name("com.acme.users.User") == "User");
    CHECK(simple_name("User") == "User");
    CHECK(capitalize("integer") == "Integer");
    CHECK(capitalize("string") == "String");
}

TEST_CASE("canonical_name schemes") {
    ObjectDef user;
    user.name = "User";
    user.source_name = "com.w.User";
    TypeDef user_def{user};

    CHECK(canonical_name(user_def, NameScheme::Simple) == "User");
    CHECK(canonical_name(user_def, NameScheme::FullyQualified) == "com_w_User");

    ObjectDef response;
    response.source_name = "com.example.api.Response";
    response.type_args.push_back(type_ref("User"));
    CHECK(canonical_name(TypeDef{response}) == "ResponseOfUser");

    ObjectDef pair;
    pair.source_name = "com.example.api.Pair";
    pair.type_args.push_back(literal(BuiltinScalar::Int));
    pair.type_args.push_back(list_of(literal(BuiltinScalar::String)));
    CHECK(canonical_name(TypeDef{pair}) == "PairOfIntListOfString");
}

TEST_CASE("map entry and list wrapper naming") {
    TypeDef key = literal(BuiltinScalar::Int);
    TypeDef value = literal(BuiltinScalar::String);
    CHECK(map_entry_name(key, value) == "IntStringEntry");

    MapEntryDef entry{Box<TypeDef>(key), Box<TypeDef>(value), "IntStringEntry"};
    TypeDef wrapped = list_of(TypeDef{entry});
    CHECK(canonical_name(wrapped, NameScheme::ListWrapper) == "ListOfIntStringEntry");
}

TEST_CASE("overload renaming follows the Using/Returns pattern") {
    CHECK(overload_name("get", {"Integer"}, "User") == "getUsingIntegerReturnsUser");
    CHECK(overload_name("get", {"String"}, "User") == "getUsingStringReturnsUser");
    CHECK(overload_name("find", {"Integer", "String"}, "Account") ==
          "findUsingIntegerStringReturnsAccount");
}
