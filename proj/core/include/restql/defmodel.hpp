#pragma once

#include "restql/box.hpp"
#include "restql/violation.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace restql {

// ---------------------------------------------------------------------------
// Scalars
// ---------------------------------------------------------------------------

/// The five scalars GraphQL defines natively.
enum class BuiltinScalar { Int, Float, String, Boolean, Id };

/// Precision-preserving scalars declared on top of the builtin five. The set
/// is closed; anything else goes through custom scalars.
enum class ExtendedScalar {
    Long,
    Double,
    Char,
    Byte,
    Short,
    BigInteger,
    BigDecimal,
    DateTime,
    Date,
    Time,
};

/// Scalar identity of a LiteralDef: builtin, extended, or a named custom
/// scalar. Custom names never collide with the builtin or extended names.
struct ScalarKind {
    std::variant<BuiltinScalar, ExtendedScalar, std::string> value;

    static ScalarKind builtin(BuiltinScalar s) { return {s}; }
    static ScalarKind extended(ExtendedScalar s) { return {s}; }
    static ScalarKind custom(std::string name) { return {std::move(name)}; }

    bool is_builtin() const { return std::holds_alternative<BuiltinScalar>(value); }
    bool is_extended() const { return std::holds_alternative<ExtendedScalar>(value); }
    bool is_custom() const { return std::holds_alternative<std::string>(value); }

    friend bool operator==(const ScalarKind&, const ScalarKind&) = default;
};

std::string to_string(BuiltinScalar s);
std::string to_string(ExtendedScalar s);
/// GraphQL-facing name of the scalar ("Int", "Long", "PhoneNumber", ...).
std::string to_string(const ScalarKind& kind);
/// Inverse of to_string; recognizes builtin and extended names, anything
/// else becomes a custom scalar.
ScalarKind scalar_kind_from_name(const std::string& name);
/// True for the ten closed extended-scalar names.
bool is_extended_scalar_name(const std::string& name);
bool is_builtin_scalar_name(const std::string& name);

// ---------------------------------------------------------------------------
// Intermediate data-type hierarchy
// ---------------------------------------------------------------------------

struct TypeDef;

struct LiteralDef {
    ScalarKind scalar;

    friend bool operator==(const LiteralDef&, const LiteralDef&) = default;
};

/// Output type of operations that return nothing.
struct VoidDef {
    friend bool operator==(const VoidDef&, const VoidDef&) = default;
};

/// Wraps a type that may not be null. Never nests and never wraps VoidDef.
struct NonNullDef {
    Box<TypeDef> inner;

    friend bool operator==(const NonNullDef&, const NonNullDef&) = default;
};

struct ListDef {
    Box<TypeDef> component;

    friend bool operator==(const ListDef&, const ListDef&) = default;
};

/// Synthesized key/value pair a map collapses into; always the component of
/// a ListDef in type-expression positions.
struct MapEntryDef {
    Box<TypeDef> key;
    Box<TypeDef> value;
    std::string entry_name;

    friend bool operator==(const MapEntryDef&, const MapEntryDef&) = default;
};

struct FieldDef {
    std::string name;        // GraphQL identifier
    Box<TypeDef> type;
    bool nullable = true;
    std::string source_name; // original field name when it differs

    const std::string& backend_name() const { return source_name.empty() ? name : source_name; }

    friend bool operator==(const FieldDef&, const FieldDef&) = default;
};

struct ObjectDef {
    std::string name;        // GraphQL identifier, post-mitigation
    std::string source_name; // qualified name in the source API
    std::vector<FieldDef> fields;
    std::vector<TypeDef> type_args; // empty unless monomorphized

    friend bool operator==(const ObjectDef&, const ObjectDef&) = default;
};

struct InterfaceDef {
    std::string name;
    std::vector<FieldDef> operations;

    friend bool operator==(const InterfaceDef&, const InterfaceDef&) = default;
};

struct EnumDef {
    std::string name;
    std::vector<std::string> values;

    friend bool operator==(const EnumDef&, const EnumDef&) = default;
};

/// By-name reference into the enclosing DefModel's type pool. Recursive
/// structures stay acyclic in memory by referring to named types this way.
struct TypeRef {
    std::string name;

    friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

/// One node of the intermediate definition model: exactly one variant.
struct TypeDef {
    std::variant<LiteralDef, VoidDef, NonNullDef, ListDef, MapEntryDef, ObjectDef,
                 InterfaceDef, EnumDef, TypeRef>
        node;

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(node);
    }
    template <typename T>
    T& as() {
        return std::get<T>(node);
    }

    friend bool operator==(const TypeDef&, const TypeDef&) = default;
};

inline TypeDef literal(ScalarKind kind) { return {LiteralDef{std::move(kind)}}; }
inline TypeDef literal(BuiltinScalar s) { return {LiteralDef{ScalarKind::builtin(s)}}; }
inline TypeDef literal(ExtendedScalar s) { return {LiteralDef{ScalarKind::extended(s)}}; }
inline TypeDef void_def() { return {VoidDef{}}; }
inline TypeDef non_null(TypeDef inner) { return {NonNullDef{Box<TypeDef>(std::move(inner))}}; }
inline TypeDef list_of(TypeDef component) { return {ListDef{Box<TypeDef>(std::move(component))}}; }
inline TypeDef type_ref(std::string name) { return {TypeRef{std::move(name)}}; }

// ---------------------------------------------------------------------------
// Meta definitions
// ---------------------------------------------------------------------------

/// Operation intent. Subscribe is reserved by the model but the pipeline
/// only ever produces Read and Write.
enum class Rws { Read, Write };

std::string to_string(Rws rws);

enum class HttpMethod { Get, Post, Put, Patch, Delete };

std::string to_string(HttpMethod m);
std::optional<HttpMethod> http_method_from_string(const std::string& s);

enum class ParamLocation { Path, Query, Body };

std::string to_string(ParamLocation loc);
std::optional<ParamLocation> param_location_from_string(const std::string& s);

struct ParamDef {
    std::string name;
    TypeDef type;
    bool required = false;

    friend bool operator==(const ParamDef&, const ParamDef&) = default;
};

/// How one GraphQL argument reaches the original REST call.
struct ParamSource {
    std::string param;        // GraphQL argument name
    ParamLocation location = ParamLocation::Query;
    std::string source_param; // original REST parameter name

    friend bool operator==(const ParamSource&, const ParamSource&) = default;
};

/// Invocation identity of the original REST endpoint, carried through the
/// model so the generator can bind schema fields back to backend calls.
struct BackendRef {
    HttpMethod method = HttpMethod::Get;
    std::string path_template;
    std::vector<ParamSource> params;

    friend bool operator==(const BackendRef&, const BackendRef&) = default;
};

struct OperationDef {
    std::string name;      // GraphQL field name, post-mitigation
    std::string source_id; // namespace + method identity, e.g. "com.a.Svc.get(integer)"
    std::vector<ParamDef> params;
    TypeDef output;
    Rws rws = Rws::Read;
    BackendRef backend;

    friend bool operator==(const OperationDef&, const OperationDef&) = default;
};

// ---------------------------------------------------------------------------
// DefModel
// ---------------------------------------------------------------------------

struct UnwrapRecord {
    std::string wrapper;  // qualified name of the discarded wrapper
    std::string context;  // operation or field the unwrap applied to
    std::string inner;    // textual description of the kept inner type

    friend bool operator==(const UnwrapRecord&, const UnwrapRecord&) = default;
};

struct RenameRecord {
    std::string original; // qualified source name (or source_id for operations)
    std::string assigned; // GraphQL identifier, unique across the log
    std::string cause;    // "Conflict", "Generic", ... annotation for explain output
    friend bool operator==(const RenameRecord&, const RenameRecord&) = default;
};

/// The processed set of operations plus every named type they reference.
/// Closed under TypeRef resolution; immutable once the processor returns it.
struct DefModel {
    std::vector<OperationDef> operations;
    std::map<std::string, TypeDef> types; // named Object/Interface/Enum/MapEntry/custom scalars
    std::vector<UnwrapRecord> wrapper_log;
    std::vector<RenameRecord> rename_log;

    const TypeDef* find_type(const std::string& name) const {
        auto it = types.find(name);
        return it == types.end() ? nullptr : &it->second;
    }

    friend bool operator==(const DefModel&, const DefModel&) = default;
};

/// Checks every structural invariant of the model: no nested non-null, no
/// void list components, map entries only under lists, unique field and enum
/// names, resolvable TypeRefs, injective rename log. Violations are data.
std::vector<Violation> validate_defmodel(const DefModel& model);

// ---------------------------------------------------------------------------
// Canonical JSON
// ---------------------------------------------------------------------------

/// Canonical serialization: sorted keys, camelCase, empty logs omitted.
/// Drives the explain command and golden tests; byte-stable across runs.
nlohmann::json to_json(const TypeDef& def);
nlohmann::json to_json(const OperationDef& op);
nlohmann::json to_json(const DefModel& model);
std::string to_canonical_json(const DefModel& model);

} // namespace restql
