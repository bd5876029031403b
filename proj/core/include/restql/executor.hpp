#pragma once

#include "restql/backend.hpp"
#include "restql/generator.hpp"
#include "restql/translator.hpp"
#include "restql/violation.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace restql {

// ---------------------------------------------------------------------------
// Request documents
// ---------------------------------------------------------------------------

/// Argument value literal from the query text, or a $variable reference.
struct ReqValue {
    enum class Kind { Null, Bool, Int, Float, String, Enum, List, Object, Variable };

    Kind kind = Kind::Null;
    bool bool_value = false;
    long long int_value = 0;
    double float_value = 0.0;
    std::string text; // String/Enum content or variable name
    std::vector<ReqValue> list;
    std::vector<std::pair<std::string, ReqValue>> object;

    friend bool operator==(const ReqValue&, const ReqValue&) = default;
};

struct Selection {
    std::string alias; // response key; equals field when no alias given
    std::string field;
    std::vector<std::pair<std::string, ReqValue>> args;
    std::vector<Selection> subselections;
    int line = 0;
    int column = 0;

    friend bool operator==(const Selection&, const Selection&) = default;
};

struct VariableDef {
    std::string name;
    GqlTypeExpr type;
    std::optional<ReqValue> default_value;

    friend bool operator==(const VariableDef&, const VariableDef&) = default;
};

enum class RequestKind { Query, Mutation };

/// Parsed GraphQL request: a single query or mutation operation with
/// variables, aliases, and nested selections. Fragments and directives are
/// outside the subset and rejected at parse time.
struct RequestDoc {
    RequestKind kind = RequestKind::Query;
    std::optional<std::string> operation_name;
    std::vector<VariableDef> variables;
    std::vector<Selection> selections;

    friend bool operator==(const RequestDoc&, const RequestDoc&) = default;
};

/// Parses the query-language subset. Throws SyntaxError with a 1-based
/// position; fragments, directives, and subscriptions report as
/// "unsupported construct" syntax errors.
RequestDoc parse_request(const std::string& text);

/// Static request checks against a schema: fields exist on their parent
/// types, argument names/types conform (non-null enforcement included),
/// variables are declared/used/type-compatible, and leaf vs composite
/// selection discipline holds. Violations are data.
std::vector<Violation> validate_request(const RequestDoc& doc, const SchemaDoc& schema);

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

/// Resolves a validated request: each root selection runs through its
/// binding (arguments transformed inbound, backend invoked, result shaped
/// by its mapping plan) and lands in `data` under its alias, in request
/// order, pruned to exactly the requested fields. A failing root field
/// yields null plus an errors entry without affecting its siblings. Throws
/// TransportError only when every root call failed at the transport level.
nlohmann::ordered_json execute(
    const RequestDoc& doc, const nlohmann::json& variables, const SchemaDoc& schema,
    const BindingManifest& manifest, const BackendAdapter& backend,
    const std::vector<std::pair<std::string, std::string>>& passthrough_headers = {});

// Transform primitives, exposed for property tests and the generator's
// inverse pair: entry_list_to_map(map_to_entry_list(m)) == m.

/// {"1": "a"} with key scalar Int becomes [{"key": 1, "value": "a"}],
/// entries ordered by the original key strings.
nlohmann::json map_to_entry_list(const nlohmann::json& map_value,
                                 const std::string& key_scalar);

/// Inverse of map_to_entry_list.
nlohmann::json entry_list_to_map(const nlohmann::json& entries,
                                 const std::string& key_scalar);

/// Applies a transform tree to a JSON value (arrays map elementwise).
/// Direction selects plan orientation for nested transforms.
nlohmann::json apply_transform(const Transform& t, const nlohmann::json& value,
                               const BindingManifest& manifest, PlanDirection direction);

} // namespace restql
