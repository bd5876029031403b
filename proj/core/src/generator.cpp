#include "restql/generator.hpp"

#include "restql/errors.hpp"

#include <set>

namespace restql {

std::string to_string(TransformKind kind) {
    switch (kind) {
    case TransformKind::Identity: return "identity";
    case TransformKind::EntryListToMap: return "entry-list-to-map";
    case TransformKind::MapToEntryList: return "map-to-entry-list";
    case TransformKind::Nested: return "nested";
    case TransformKind::ScalarCoerce: return "scalar-coerce";
    }
    return "identity";
}

std::string to_string(PlanDirection direction) {
    return direction == PlanDirection::Outbound ? "outbound" : "inbound";
}

const MappingStep* ObjectMappingPlan::step_for(const std::string& field) const {
    for (const auto& step : steps) {
        const std::string& key =
            direction == PlanDirection::Outbound ? step.target_field : step.source_field;
        if (key == field) {
            return &step;
        }
    }
    return nullptr;
}

const Binding* BindingManifest::find(Rws root, const std::string& field) const {
    for (const auto& b : bindings) {
        if (b.root == root && b.field == field) {
            return &b;
        }
    }
    return nullptr;
}

const ObjectMappingPlan* BindingManifest::plan(const std::string& name) const {
    auto it = mapping_plans.find(name);
    return it == mapping_plans.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

namespace {

/// Scalars whose lexical form needs explicit coercion at the JSON boundary.
bool needs_coercion(const ScalarKind& scalar) {
    if (!scalar.is_extended()) {
        return false;
    }
    switch (std::get<ExtendedScalar>(scalar.value)) {
    case ExtendedScalar::Long:
    case ExtendedScalar::BigInteger:
    case ExtendedScalar::BigDecimal:
        return true;
    default:
        return false;
    }
}

std::string entry_key_scalar(const TypeDef& key) {
    if (const auto* lit = std::get_if<LiteralDef>(&key.node)) {
        return to_string(lit->scalar);
    }
    return "String"; // enum and reference keys travel as strings
}

class Generator {
public:
    Generator(const DefModel& model, const SchemaDoc& schema)
        : model_(model), schema_(schema) {}

    BindingManifest run() {
        for (const auto& op : model_.operations) {
            manifest_.bindings.push_back(bind_operation(op));
        }
        check_coverage();
        return std::move(manifest_);
    }

    ObjectMappingPlan outbound_plan_for(const ObjectDef& obj) {
        build_plan_for_object(obj, PlanDirection::Outbound);
        return manifest_.mapping_plans.at(obj.name);
    }

private:
    void check_coverage() {
        std::set<std::pair<std::string, std::string>> bound;
        for (const auto& b : manifest_.bindings) {
            bound.insert({to_string(b.root), b.field});
        }
        for (const auto& f : schema_.query_root) {
            if (bound.count({"READ", f.name}) == 0) {
                throw Error("schema field Query." + f.name + " has no DefModel counterpart");
            }
        }
        for (const auto& f : schema_.mutation_root) {
            if (bound.count({"WRITE", f.name}) == 0) {
                throw Error("schema field Mutation." + f.name + " has no DefModel counterpart");
            }
        }
    }

    Binding bind_operation(const OperationDef& op) {
        Binding b;
        b.root = op.rws;
        b.field = op.name;
        b.backend.method = op.backend.method;
        b.backend.path_template = op.backend.path_template;
        for (std::size_t i = 0; i < op.params.size(); ++i) {
            const ParamDef& p = op.params[i];
            ParamBinding pb;
            pb.gql_arg = p.name;
            if (i < op.backend.params.size() && op.backend.params[i].param == p.name) {
                pb.location = op.backend.params[i].location;
                pb.source_param = op.backend.params[i].source_param;
            } else {
                pb.source_param = p.name;
            }
            pb.transform = transform_for(p.type, PlanDirection::Inbound);
            b.backend.param_bindings.push_back(std::move(pb));
        }
        b.void_result = op.output.is<VoidDef>();
        if (!b.void_result) {
            b.result = transform_for(op.output, PlanDirection::Outbound);
            b.result_plan = innermost_plan(b.result);
        }
        for (const auto& w : model_.wrapper_log) {
            if (w.context == "output of " + op.source_id) {
                b.unwrap_steps.push_back("body");
            }
        }
        return b;
    }

    static std::string innermost_plan(const Transform& t) {
        if (t.kind == TransformKind::Nested) {
            return t.plan;
        }
        if (t.value) {
            return innermost_plan(**t.value);
        }
        return "";
    }

    Transform transform_for(const TypeDef& def, PlanDirection direction) {
        if (const auto* nn = std::get_if<NonNullDef>(&def.node)) {
            return transform_for(*nn->inner, direction);
        }
        if (const auto* lit = std::get_if<LiteralDef>(&def.node)) {
            if (needs_coercion(lit->scalar)) {
                Transform t;
                t.kind = TransformKind::ScalarCoerce;
                t.scalar = to_string(lit->scalar);
                return t;
            }
            return Transform::identity();
        }
        if (const auto* list = std::get_if<ListDef>(&def.node)) {
            if (const auto* entry = std::get_if<MapEntryDef>(&list->component->node)) {
                Transform t;
                t.kind = direction == PlanDirection::Outbound ? TransformKind::MapToEntryList
                                                              : TransformKind::EntryListToMap;
                t.scalar = entry_key_scalar(*entry->key);
                Transform value = transform_for(*entry->value, direction);
                if (!(value == Transform::identity())) {
                    t.value = Box<Transform>(std::move(value));
                }
                return t;
            }
            // Lists apply their component transform elementwise.
            return transform_for(*list->component, direction);
        }
        if (const auto* ref = std::get_if<TypeRef>(&def.node)) {
            const TypeDef* pooled = model_.find_type(ref->name);
            if (pooled == nullptr) {
                throw Error("dangling type reference \"" + ref->name + "\" in generator");
            }
            if (const auto* obj = std::get_if<ObjectDef>(&pooled->node)) {
                Transform t;
                t.kind = TransformKind::Nested;
                t.plan = build_plan_for_object(*obj, direction);
                return t;
            }
            if (const auto* iface = std::get_if<InterfaceDef>(&pooled->node)) {
                Transform t;
                t.kind = TransformKind::Nested;
                t.plan = build_plan_for_fields(iface->name, iface->operations, direction);
                return t;
            }
            return Transform::identity(); // enums and custom scalars pass through
        }
        return Transform::identity();
    }

    std::string build_plan_for_object(const ObjectDef& obj, PlanDirection direction) {
        return build_plan_for_fields(obj.name, obj.fields, direction);
    }

    std::string build_plan_for_fields(const std::string& type_name,
                                      const std::vector<FieldDef>& fields,
                                      PlanDirection direction) {
        const std::string plan_name = direction == PlanDirection::Outbound
                                          ? type_name
                                          : input_decl_name(type_name);
        if (manifest_.mapping_plans.count(plan_name) > 0 || building_.count(plan_name) > 0) {
            return plan_name;
        }
        building_.insert(plan_name);
        ObjectMappingPlan plan;
        plan.graphql_type = plan_name;
        plan.direction = direction;
        for (const auto& f : fields) {
            MappingStep step;
            if (direction == PlanDirection::Outbound) {
                step.source_field = f.backend_name();
                step.target_field = f.name;
            } else {
                step.source_field = f.name;
                step.target_field = f.backend_name();
            }
            step.transform = transform_for(*f.type, direction);
            plan.steps.push_back(std::move(step));
        }
        manifest_.mapping_plans[plan_name] = std::move(plan);
        building_.erase(plan_name);
        return plan_name;
    }

    /// Input-object twin assigned by the translator ("XInput", suffixed on
    /// collision). The schema is the source of truth.
    std::string input_decl_name(const std::string& type_name) const {
        std::string candidate = type_name + "Input";
        if (const GqlTypeDecl* decl = schema_.find(candidate);
            decl != nullptr && decl->kind == GqlTypeKind::InputObject) {
            return candidate;
        }
        for (int n = 2; n < 100; ++n) {
            std::string suffixed = type_name + "Input_" + std::to_string(n);
            if (const GqlTypeDecl* decl = schema_.find(suffixed);
                decl != nullptr && decl->kind == GqlTypeKind::InputObject) {
                return suffixed;
            }
        }
        return candidate;
    }

    const DefModel& model_;
    const SchemaDoc& schema_;
    BindingManifest manifest_;
    std::set<std::string> building_;
};

} // namespace

BindingManifest generate_bindings(const DefModel& model, const SchemaDoc& schema) {
    return Generator(model, schema).run();
}

ObjectMappingPlan build_object_mapping(const ObjectDef& obj, const DefModel& model) {
    SchemaDoc schema = translate(model);
    return Generator(model, schema).outbound_plan_for(obj);
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

std::set<std::string> template_placeholders(const std::string& path) {
    std::set<std::string> names;
    std::size_t pos = 0;
    while ((pos = path.find('{', pos)) != std::string::npos) {
        auto end = path.find('}', pos);
        if (end == std::string::npos) {
            break;
        }
        names.insert(path.substr(pos + 1, end - pos - 1));
        pos = end + 1;
    }
    return names;
}

void check_transform_plans(const Transform& t, const BindingManifest& manifest,
                           const std::string& subject, std::vector<Violation>& out) {
    if (t.kind == TransformKind::Nested && manifest.plan(t.plan) == nullptr) {
        out.push_back({"missing-plan", subject, "plan \"" + t.plan + "\" is not defined"});
    }
    if (t.value) {
        check_transform_plans(**t.value, manifest, subject, out);
    }
}

} // namespace

std::vector<Violation> validate_manifest(const BindingManifest& manifest,
                                         const SchemaDoc& schema) {
    std::vector<Violation> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& b : manifest.bindings) {
        const std::string subject = to_string(b.root) + "." + b.field;
        if (!seen.insert({to_string(b.root), b.field}).second) {
            out.push_back({"duplicate-binding", subject, ""});
        }
        if (schema.find_root_field(b.root, b.field) == nullptr) {
            out.push_back({"unknown-field", subject, "schema has no such root field"});
        }
        auto placeholders = template_placeholders(b.backend.path_template);
        std::map<std::string, int> covered;
        int body_count = 0;
        for (const auto& pb : b.backend.param_bindings) {
            if (pb.location == ParamLocation::Path) {
                covered[pb.source_param]++;
            }
            if (pb.location == ParamLocation::Body) {
                ++body_count;
            }
            check_transform_plans(pb.transform, manifest, subject, out);
        }
        for (const auto& name : placeholders) {
            if (covered[name] != 1) {
                out.push_back({"path-placeholder-coverage", subject,
                               "placeholder {" + name + "} must be bound exactly once"});
            }
        }
        if (body_count > 1) {
            out.push_back({"multiple-body-bindings", subject, ""});
        }
        if (!b.result_plan.empty() && manifest.plan(b.result_plan) == nullptr) {
            out.push_back({"missing-plan", subject,
                           "result plan \"" + b.result_plan + "\" is not defined"});
        }
        check_transform_plans(b.result, manifest, subject, out);
    }
    for (const auto& [name, plan] : manifest.mapping_plans) {
        const GqlTypeDecl* decl = schema.find(plan.graphql_type);
        if (decl == nullptr) {
            out.push_back({"unknown-type", name, "plan type is not declared in the schema"});
            continue;
        }
        std::set<std::string> plan_fields;
        for (const auto& step : plan.steps) {
            plan_fields.insert(plan.direction == PlanDirection::Outbound ? step.target_field
                                                                         : step.source_field);
            check_transform_plans(step.transform, manifest, name, out);
        }
        for (const auto& f : decl->fields) {
            if (plan_fields.count(f.name) == 0) {
                out.push_back({"uncovered-field", name + "." + f.name,
                               "plan does not cover this GraphQL field"});
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

namespace {

using nlohmann::json;

std::optional<TransformKind> transform_kind_from_string(const std::string& s) {
    if (s == "identity") return TransformKind::Identity;
    if (s == "entry-list-to-map") return TransformKind::EntryListToMap;
    if (s == "map-to-entry-list") return TransformKind::MapToEntryList;
    if (s == "nested") return TransformKind::Nested;
    if (s == "scalar-coerce") return TransformKind::ScalarCoerce;
    return std::nullopt;
}

Transform transform_from_json(const json& j) {
    if (!j.is_object()) {
        throw IngestError("transform must be an object");
    }
    Transform t;
    auto kind = transform_kind_from_string(j.value("kind", std::string{"identity"}));
    if (!kind) {
        throw IngestError("unknown transform kind \"" + j.value("kind", std::string{}) + "\"");
    }
    t.kind = *kind;
    t.scalar = j.value("scalar", std::string{});
    if (j.contains("keyScalar")) {
        t.scalar = j["keyScalar"].get<std::string>();
    }
    t.plan = j.value("plan", std::string{});
    if (j.contains("value")) {
        t.value = Box<Transform>(transform_from_json(j["value"]));
    }
    return t;
}

} // namespace

json to_json(const Transform& t) {
    json j;
    j["kind"] = to_string(t.kind);
    if (t.kind == TransformKind::ScalarCoerce) {
        j["scalar"] = t.scalar;
    }
    if (t.kind == TransformKind::EntryListToMap || t.kind == TransformKind::MapToEntryList) {
        j["keyScalar"] = t.scalar;
    }
    if (t.kind == TransformKind::Nested) {
        j["plan"] = t.plan;
    }
    if (t.value) {
        j["value"] = to_json(**t.value);
    }
    return j;
}

json to_json(const BindingManifest& manifest) {
    json root;
    root["bindingsVersion"] = manifest.version;
    root["bindings"] = json::array();
    for (const auto& b : manifest.bindings) {
        json jb;
        jb["root"] = b.root == Rws::Read ? "query" : "mutation";
        jb["field"] = b.field;
        json backend;
        backend["httpMethod"] = to_string(b.backend.method);
        backend["pathTemplate"] = b.backend.path_template;
        backend["paramBindings"] = json::array();
        for (const auto& pb : b.backend.param_bindings) {
            json jp;
            jp["gqlArg"] = pb.gql_arg;
            jp["location"] = to_string(pb.location);
            jp["sourceParam"] = pb.source_param;
            if (!(pb.transform == Transform::identity())) {
                jp["transform"] = to_json(pb.transform);
            }
            backend["paramBindings"].push_back(std::move(jp));
        }
        jb["backend"] = std::move(backend);
        if (!b.result_plan.empty()) {
            jb["resultPlan"] = b.result_plan;
        }
        if (!(b.result == Transform::identity())) {
            jb["resultTransform"] = to_json(b.result);
        }
        if (!b.unwrap_steps.empty()) {
            jb["unwrapSteps"] = b.unwrap_steps;
        }
        if (b.void_result) {
            jb["voidResult"] = true;
        }
        root["bindings"].push_back(std::move(jb));
    }
    root["mappingPlans"] = json::object();
    for (const auto& [name, plan] : manifest.mapping_plans) {
        json jp;
        jp["graphqlType"] = plan.graphql_type;
        jp["direction"] = to_string(plan.direction);
        jp["steps"] = json::array();
        for (const auto& step : plan.steps) {
            json js;
            js["sourceField"] = step.source_field;
            js["targetField"] = step.target_field;
            js["transform"] = to_json(step.transform);
            jp["steps"].push_back(std::move(js));
        }
        root["mappingPlans"][name] = std::move(jp);
    }
    return root;
}

BindingManifest manifest_from_json(const json& root) {
    if (!root.is_object()) {
        throw IngestError("manifest must be a JSON object");
    }
    if (root.value("bindingsVersion", std::string{}) != "1") {
        throw IngestError("missing or unsupported \"bindingsVersion\"");
    }
    BindingManifest manifest;
    manifest.version = "1";
    for (const auto& jb : root.value("bindings", json::array())) {
        Binding b;
        const std::string rootName = jb.value("root", std::string{});
        if (rootName == "query") {
            b.root = Rws::Read;
        } else if (rootName == "mutation") {
            b.root = Rws::Write;
        } else {
            throw IngestError("binding root must be \"query\" or \"mutation\"");
        }
        b.field = jb.value("field", std::string{});
        if (b.field.empty()) {
            throw IngestError("binding without a field name");
        }
        const json& backend = jb.value("backend", json::object());
        auto method = http_method_from_string(backend.value("httpMethod", std::string{}));
        if (!method) {
            throw IngestError("binding " + b.field + " has a bad httpMethod");
        }
        b.backend.method = *method;
        b.backend.path_template = backend.value("pathTemplate", std::string{});
        for (const auto& jp : backend.value("paramBindings", json::array())) {
            ParamBinding pb;
            pb.gql_arg = jp.value("gqlArg", std::string{});
            auto loc = param_location_from_string(jp.value("location", std::string{}));
            if (!loc) {
                throw IngestError("param binding " + pb.gql_arg + " has a bad location");
            }
            pb.location = *loc;
            pb.source_param = jp.value("sourceParam", pb.gql_arg);
            if (jp.contains("transform")) {
                pb.transform = transform_from_json(jp["transform"]);
            }
            b.backend.param_bindings.push_back(std::move(pb));
        }
        b.result_plan = jb.value("resultPlan", std::string{});
        if (jb.contains("resultTransform")) {
            b.result = transform_from_json(jb["resultTransform"]);
        }
        if (jb.contains("unwrapSteps")) {
            b.unwrap_steps = jb["unwrapSteps"].get<std::vector<std::string>>();
        }
        b.void_result = jb.value("voidResult", false);
        manifest.bindings.push_back(std::move(b));
    }
    const json plans = root.value("mappingPlans", json::object());
    for (const auto& [name, jp] : plans.items()) {
        ObjectMappingPlan plan;
        plan.graphql_type = jp.value("graphqlType", name);
        plan.direction = jp.value("direction", std::string{"outbound"}) == "inbound"
                             ? PlanDirection::Inbound
                             : PlanDirection::Outbound;
        for (const auto& js : jp.value("steps", json::array())) {
            MappingStep step;
            step.source_field = js.value("sourceField", std::string{});
            step.target_field = js.value("targetField", std::string{});
            if (js.contains("transform")) {
                step.transform = transform_from_json(js["transform"]);
            }
            plan.steps.push_back(std::move(step));
        }
        manifest.mapping_plans[name] = std::move(plan);
    }
    return manifest;
}

} // namespace restql
