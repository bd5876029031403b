#pragma once

#include "restql/box.hpp"
#include "restql/defmodel.hpp"
#include "restql/violation.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace restql {

// ---------------------------------------------------------------------------
// GraphQL schema representation
// ---------------------------------------------------------------------------

struct GqlTypeExpr;

struct GqlNamed {
    std::string name;

    friend bool operator==(const GqlNamed&, const GqlNamed&) = default;
};

struct GqlList {
    Box<GqlTypeExpr> inner;

    friend bool operator==(const GqlList&, const GqlList&) = default;
};

struct GqlNonNull {
    Box<GqlTypeExpr> inner;

    friend bool operator==(const GqlNonNull&, const GqlNonNull&) = default;
};

struct GqlTypeExpr {
    std::variant<GqlNamed, GqlList, GqlNonNull> node;

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(node);
    }

    /// Innermost named type of the expression.
    const std::string& named() const;

    friend bool operator==(const GqlTypeExpr&, const GqlTypeExpr&) = default;
};

inline GqlTypeExpr gql_named(std::string name) { return {GqlNamed{std::move(name)}}; }
inline GqlTypeExpr gql_list(GqlTypeExpr inner) {
    return {GqlList{Box<GqlTypeExpr>(std::move(inner))}};
}
inline GqlTypeExpr gql_non_null(GqlTypeExpr inner) {
    return {GqlNonNull{Box<GqlTypeExpr>(std::move(inner))}};
}

/// "Long", "[IntStringEntry]", "String!"
std::string to_string(const GqlTypeExpr& expr);

struct GqlArg {
    std::string name;
    GqlTypeExpr type;

    friend bool operator==(const GqlArg&, const GqlArg&) = default;
};

struct GqlField {
    std::string name;
    std::vector<GqlArg> args;
    GqlTypeExpr type;

    friend bool operator==(const GqlField&, const GqlField&) = default;
};

enum class GqlTypeKind { Object, InputObject, Interface, Enum, Scalar };

std::string to_string(GqlTypeKind kind);

struct GqlTypeDecl {
    GqlTypeKind kind = GqlTypeKind::Object;
    std::string name;
    std::vector<GqlField> fields;          // object / interface / input object
    std::vector<std::string> enum_values;  // enum

    friend bool operator==(const GqlTypeDecl&, const GqlTypeDecl&) = default;
};

/// Internal GraphQL schema representation, serializable to SDL and
/// validatable against GraphQL's structural rules.
struct SchemaDoc {
    std::vector<GqlField> query_root;
    std::vector<GqlField> mutation_root; // omitted from SDL when empty
    std::map<std::string, GqlTypeDecl> types;

    const GqlTypeDecl* find(const std::string& name) const {
        auto it = types.find(name);
        return it == types.end() ? nullptr : &it->second;
    }
    const GqlField* find_root_field(Rws root, const std::string& name) const;

    friend bool operator==(const SchemaDoc&, const SchemaDoc&) = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Converts a valid DefModel into a SchemaDoc: read operations become Query
/// fields, write operations Mutation fields, void outputs nullable Boolean
/// result fields, and every object referenced in a parameter position gets
/// a parallel "<Name>Input" input object. Extended and custom scalars are
/// declared as `scalar` types.
SchemaDoc translate(const DefModel& model);

/// Input-object counterpart of an object definition: same field names, with
/// nested object references rewritten to their Input counterparts.
GqlTypeDecl to_input_type(const ObjectDef& obj, const DefModel& model);

/// Deterministic SDL: scalars, enums, interfaces, types, inputs, then Query
/// and Mutation; declarations name-sorted per section, two-space indent,
/// LF endings. Byte-identical across runs.
std::string print_sdl(const SchemaDoc& schema);

/// Checks schema structural rules: resolvable references, unique names,
/// non-empty objects/inputs, input/output position discipline, the GraphQL
/// name grammar, and a non-empty Query root.
std::vector<Violation> validate_schema(const SchemaDoc& schema);

/// Reparses print_sdl output (and hand-written SDL in the same subset) back
/// into a SchemaDoc. Throws SyntaxError with a position on malformed input.
SchemaDoc parse_sdl(const std::string& text);

} // namespace restql
