#pragma once

#include "restql/box.hpp"
#include "restql/defmodel.hpp"
#include "restql/translator.hpp"
#include "restql/violation.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace restql {

// ---------------------------------------------------------------------------
// Value transforms
// ---------------------------------------------------------------------------

enum class TransformKind {
    Identity,
    EntryListToMap, // inbound: [{key,value}] -> JSON object
    MapToEntryList, // outbound: JSON object -> [{key,value}]
    Nested,         // apply a named object mapping plan
    ScalarCoerce,   // lexical string <-> extended scalar forms
};

std::string to_string(TransformKind kind);

/// One value transform. Entry transforms carry the key scalar and the
/// per-value transform; list values apply their transform elementwise.
struct Transform {
    TransformKind kind = TransformKind::Identity;
    std::string scalar;                  // ScalarCoerce target / entry key scalar
    std::string plan;                    // Nested plan name
    std::optional<Box<Transform>> value; // entry transforms: value handling

    static Transform identity() { return {}; }

    friend bool operator==(const Transform&, const Transform&) = default;
};

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

struct MappingStep {
    std::string source_field;
    std::string target_field;
    Transform transform;

    friend bool operator==(const MappingStep&, const MappingStep&) = default;
};

enum class PlanDirection { Outbound, Inbound };

std::string to_string(PlanDirection direction);

/// Field-by-field conversion between one backend object shape and one
/// GraphQL type. Outbound plans target GraphQL fields; inbound plans start
/// from them. Nested plans are referenced by name, keeping plans acyclic.
struct ObjectMappingPlan {
    std::string graphql_type;
    PlanDirection direction = PlanDirection::Outbound;
    std::vector<MappingStep> steps;

    const MappingStep* step_for(const std::string& field) const;

    friend bool operator==(const ObjectMappingPlan&, const ObjectMappingPlan&) = default;
};

struct ParamBinding {
    std::string gql_arg;
    ParamLocation location = ParamLocation::Query;
    std::string source_param;
    Transform transform;

    friend bool operator==(const ParamBinding&, const ParamBinding&) = default;
};

struct BackendCall {
    HttpMethod method = HttpMethod::Get;
    std::string path_template;
    std::vector<ParamBinding> param_bindings;

    friend bool operator==(const BackendCall&, const BackendCall&) = default;
};

/// Invocation plan for one schema field: the backend call plus how the
/// response becomes the GraphQL result. `unwrap_steps` drills discarded
/// wrapper envelopes ("body" per unwrap) before the result transform runs.
struct Binding {
    Rws root = Rws::Read;
    std::string field;
    BackendCall backend;
    std::string result_plan;             // named plan, empty for scalar results
    Transform result;
    std::vector<std::string> unwrap_steps;
    bool void_result = false;

    friend bool operator==(const Binding&, const Binding&) = default;
};

struct BindingManifest {
    std::string version = "1";
    std::vector<Binding> bindings;
    std::map<std::string, ObjectMappingPlan> mapping_plans;

    const Binding* find(Rws root, const std::string& field) const;
    const ObjectMappingPlan* plan(const std::string& name) const;

    friend bool operator==(const BindingManifest&, const BindingManifest&) = default;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Produces the resolver plan for a schema: exactly one binding per root
/// field, plus the mapping plans they reference. Throws Error when a schema
/// field has no DefModel counterpart.
BindingManifest generate_bindings(const DefModel& model, const SchemaDoc& schema);

/// Outbound mapping plan for one object definition: one step per field,
/// map-derived fields get entry-list transforms, nested objects reference
/// plans by name.
ObjectMappingPlan build_object_mapping(const ObjectDef& obj, const DefModel& model);

/// Manifest structural checks: plan references resolve, path placeholders
/// are covered exactly once, at most one body binding per call, plan steps
/// cover their GraphQL type's fields.
std::vector<Violation> validate_manifest(const BindingManifest& manifest,
                                         const SchemaDoc& schema);

nlohmann::json to_json(const Transform& t);
nlohmann::json to_json(const BindingManifest& manifest);
/// Inverse of to_json; throws IngestError on malformed documents or a
/// missing "bindingsVersion".
BindingManifest manifest_from_json(const nlohmann::json& j);

} // namespace restql
