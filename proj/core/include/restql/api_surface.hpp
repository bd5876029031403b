#pragma once

#include "restql/box.hpp"
#include "restql/defmodel.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace restql {

// ---------------------------------------------------------------------------
// Source-language types, as the plugins describe them
// ---------------------------------------------------------------------------

struct SourceType;

struct SourcePrimitive {
    std::string name;                       // "long", "integer", "string", ...
    std::optional<std::string> format_hint; // "int64", "date-time", ...

    friend bool operator==(const SourcePrimitive&, const SourcePrimitive&) = default;
};

struct SourceNamed {
    std::string qualified_name;
    std::vector<SourceType> type_args;

    friend bool operator==(const SourceNamed&, const SourceNamed&) = default;
};

struct SourceList {
    Box<SourceType> component;

    friend bool operator==(const SourceList&, const SourceList&) = default;
};

struct SourceMap {
    Box<SourceType> key;
    Box<SourceType> value;

    friend bool operator==(const SourceMap&, const SourceMap&) = default;
};

struct SourceVoid {
    friend bool operator==(const SourceVoid&, const SourceVoid&) = default;
};

/// Explicit nullability override; without it the model assumes nullable.
struct SourceNullableMarker {
    Box<SourceType> inner;
    bool required = false;

    friend bool operator==(const SourceNullableMarker&, const SourceNullableMarker&) = default;
};

struct SourceType {
    std::variant<SourcePrimitive, SourceNamed, SourceList, SourceMap, SourceVoid,
                 SourceNullableMarker>
        node;

    template <typename T>
    bool is() const {
        return std::holds_alternative<T>(node);
    }
    template <typename T>
    const T& as() const {
        return std::get<T>(node);
    }

    friend bool operator==(const SourceType&, const SourceType&) = default;
};

inline SourceType src_primitive(std::string name, std::optional<std::string> format = {}) {
    return {SourcePrimitive{std::move(name), std::move(format)}};
}
inline SourceType src_named(std::string qualified_name, std::vector<SourceType> args = {}) {
    return {SourceNamed{std::move(qualified_name), std::move(args)}};
}
inline SourceType src_list(SourceType component) {
    return {SourceList{Box<SourceType>(std::move(component))}};
}
inline SourceType src_map(SourceType key, SourceType value) {
    return {SourceMap{Box<SourceType>(std::move(key)), Box<SourceType>(std::move(value))}};
}
inline SourceType src_void() { return {SourceVoid{}}; }
inline SourceType src_required(SourceType inner, bool required = true) {
    return {SourceNullableMarker{Box<SourceType>(std::move(inner)), required}};
}

/// Drops nullability markers; they carry no type identity.
const SourceType& strip_markers(const SourceType& t);

/// Stable structural key of a source type, used for memoization and
/// diagnostics ("com.acme.Response<com.acme.User>"). Markers are ignored.
std::string source_type_key(const SourceType& t);

// ---------------------------------------------------------------------------
// Declarations and operations
// ---------------------------------------------------------------------------

struct SourceField {
    std::string name;
    SourceType type;
    bool required = false;
    bool transient = false; // excluded from mapping, mirroring non-serializable fields

    friend bool operator==(const SourceField&, const SourceField&) = default;
};

struct SourceInterfaceOp {
    std::string name;
    SourceType return_type;
    bool parameterized = false; // method declares parameters; flagged Unknown downstream

    friend bool operator==(const SourceInterfaceOp&, const SourceInterfaceOp&) = default;
};

enum class DeclKind { Object, Interface, Enum, Unknown };

std::string to_string(DeclKind kind);

/// One named declaration from the source API. `Unknown` marks a declaration
/// that exists but carries no mappable definition (e.g. an opaque base type).
struct TypeDecl {
    DeclKind kind = DeclKind::Object;
    std::vector<std::string> type_params;
    std::vector<SourceField> fields;            // object
    std::vector<SourceInterfaceOp> operations;  // interface
    std::vector<std::string> values;            // enum

    friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct SourceLocation {
    std::string file;
    int line = 0;

    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct SourceParam {
    std::string name;
    SourceType type;
    ParamLocation location = ParamLocation::Query;
    bool required = false;

    friend bool operator==(const SourceParam&, const SourceParam&) = default;
};

struct SourceOperation {
    std::string name;
    HttpMethod http_method = HttpMethod::Get;
    std::string path;
    std::vector<SourceParam> params;
    SourceType return_type;
    SourceLocation location;

    friend bool operator==(const SourceOperation&, const SourceOperation&) = default;
};

struct SourceService {
    std::string namespace_name;
    std::vector<SourceOperation> operations;

    friend bool operator==(const SourceService&, const SourceService&) = default;
};

struct SurfaceMetadata {
    std::string plugin;
    std::string source;

    friend bool operator==(const SurfaceMetadata&, const SurfaceMetadata&) = default;
};

/// Framework-agnostic description of the source APIs, produced by plugins
/// and consumed by the processor.
struct ApiSurface {
    std::vector<SourceService> services;
    std::map<std::string, TypeDecl> type_decls;
    SurfaceMetadata metadata;

    std::size_t operation_count() const {
        std::size_t n = 0;
        for (const auto& s : services) {
            n += s.operations.size();
        }
        return n;
    }

    friend bool operator==(const ApiSurface&, const ApiSurface&) = default;
};

/// Structural checks every plugin output must satisfy: supported HTTP
/// methods only, at most one body parameter, path parameters present in the
/// path template, scalar/enum map keys, type arguments on named types only.
std::vector<Violation> validate_surface(const ApiSurface& surface);

} // namespace restql
