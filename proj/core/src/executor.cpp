#include "restql/executor.hpp"

#include "restql/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace restql {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr long long kSafeIntegerMax = 9007199254740991LL; // 2^53 - 1

// ---------------------------------------------------------------------------
// Schema lookups
// ---------------------------------------------------------------------------

enum class NamedKind { BuiltinScalar, DeclaredScalar, Enum, Object, Input, Unknown };

NamedKind named_kind(const SchemaDoc& schema, const std::string& name) {
    if (name == "Int" || name == "Float" || name == "String" || name == "Boolean" ||
        name == "ID") {
        return NamedKind::BuiltinScalar;
    }
    const GqlTypeDecl* decl = schema.find(name);
    if (decl == nullptr) {
        return NamedKind::Unknown;
    }
    switch (decl->kind) {
    case GqlTypeKind::Scalar: return NamedKind::DeclaredScalar;
    case GqlTypeKind::Enum: return NamedKind::Enum;
    case GqlTypeKind::InputObject: return NamedKind::Input;
    case GqlTypeKind::Object:
    case GqlTypeKind::Interface: return NamedKind::Object;
    }
    return NamedKind::Unknown;
}

bool is_composite(NamedKind kind) {
    return kind == NamedKind::Object || kind == NamedKind::Input;
}

// ---------------------------------------------------------------------------
// validate_request
// ---------------------------------------------------------------------------

/// Literal kinds each scalar accepts in an argument position.
bool scalar_accepts(const std::string& scalar, const ReqValue& v) {
    using K = ReqValue::Kind;
    if (scalar == "Int") {
        return v.kind == K::Int;
    }
    if (scalar == "Float" || scalar == "Double" || scalar == "BigDecimal") {
        return v.kind == K::Int || v.kind == K::Float ||
               (scalar == "BigDecimal" && v.kind == K::String);
    }
    if (scalar == "String" || scalar == "DateTime" || scalar == "Date" || scalar == "Time") {
        return v.kind == K::String;
    }
    if (scalar == "Char") {
        return v.kind == K::String && v.text.size() == 1;
    }
    if (scalar == "Boolean") {
        return v.kind == K::Bool;
    }
    if (scalar == "ID") {
        return v.kind == K::String || v.kind == K::Int;
    }
    if (scalar == "Long" || scalar == "Short" || scalar == "Byte" ||
        scalar == "BigInteger") {
        return v.kind == K::Int || v.kind == K::String;
    }
    // Custom scalars are opaque; any non-composite literal passes.
    return v.kind == K::Int || v.kind == K::Float || v.kind == K::String ||
           v.kind == K::Bool || v.kind == K::Enum;
}

class RequestChecker {
public:
    RequestChecker(const RequestDoc& doc, const SchemaDoc& schema)
        : doc_(doc), schema_(schema) {}

    std::vector<Violation> run() {
        for (const auto& var : doc_.variables) {
            if (!declared_.emplace(var.name, &var).second) {
                add("duplicate-variable", "$" + var.name, "variable declared twice");
            }
            check_variable_type(var);
        }
        const char* root_name = doc_.kind == RequestKind::Query ? "Query" : "Mutation";
        const auto& fields = doc_.kind == RequestKind::Query ? schema_.query_root
                                                             : schema_.mutation_root;
        for (const auto& sel : doc_.selections) {
            check_selection(sel, fields, root_name);
        }
        for (const auto& var : doc_.variables) {
            if (used_.count(var.name) == 0) {
                add("unused-variable", "$" + var.name, "declared but never used");
            }
        }
        return std::move(violations_);
    }

private:
    void add(std::string rule, std::string subject, std::string detail = "") {
        violations_.push_back({std::move(rule), std::move(subject), std::move(detail)});
    }

    void check_variable_type(const VariableDef& var) {
        const std::string& name = var.type.named();
        NamedKind kind = named_kind(schema_, name);
        if (kind == NamedKind::Unknown) {
            add("undefined-reference", "$" + var.name, "\"" + name + "\" is not declared");
        } else if (kind == NamedKind::Object) {
            add("bad-variable-type", "$" + var.name,
                "variables must use input types, not \"" + name + "\"");
        }
        if (var.default_value) {
            check_value(*var.default_value, var.type, "$" + var.name);
        }
    }

    const GqlField* find_field(const std::vector<GqlField>& fields, const std::string& name) {
        for (const auto& f : fields) {
            if (f.name == name) {
                return &f;
            }
        }
        return nullptr;
    }

    void check_selection(const Selection& sel, const std::vector<GqlField>& parent_fields,
                         const std::string& parent_name) {
        const std::string subject = parent_name + "." + sel.field;
        if (sel.field == "__schema" || sel.field == "__type") {
            add("unsupported-construct", subject, "introspection is not supported");
            return;
        }
        if (sel.field == "__typename") {
            if (!sel.subselections.empty()) {
                add("leaf-subselection", subject, "__typename takes no subselection");
            }
            if (!sel.args.empty()) {
                add("unknown-argument", subject, "__typename takes no arguments");
            }
            return;
        }
        const GqlField* field = find_field(parent_fields, sel.field);
        if (field == nullptr) {
            add("unknown-field", subject, "no such field on " + parent_name);
            return;
        }
        check_arguments(sel, *field, subject);

        const std::string& type_name = field->type.named();
        NamedKind kind = named_kind(schema_, type_name);
        if (is_composite(kind)) {
            if (sel.subselections.empty()) {
                add("missing-subselection", subject,
                    "composite type \"" + type_name + "\" requires a selection set");
                return;
            }
            const GqlTypeDecl* decl = schema_.find(type_name);
            for (const auto& sub : sel.subselections) {
                check_selection(sub, decl->fields, type_name);
            }
        } else if (!sel.subselections.empty()) {
            add("leaf-subselection", subject,
                "leaf type \"" + type_name + "\" takes no subselection");
        }
    }

    void check_arguments(const Selection& sel, const GqlField& field,
                         const std::string& subject) {
        std::set<std::string> provided;
        for (const auto& [name, value] : sel.args) {
            if (!provided.insert(name).second) {
                add("duplicate-argument", subject + "(" + name + ")", "");
                continue;
            }
            const GqlArg* arg = nullptr;
            for (const auto& a : field.args) {
                if (a.name == name) {
                    arg = &a;
                    break;
                }
            }
            if (arg == nullptr) {
                add("unknown-argument", subject + "(" + name + ")", "");
                continue;
            }
            check_value(value, arg->type, subject + "(" + name + ")");
        }
        for (const auto& a : field.args) {
            if (a.type.is<GqlNonNull>() && provided.count(a.name) == 0) {
                add("missing-argument", subject + "(" + a.name + ")",
                    "non-null argument must be provided");
            }
        }
    }

    void check_value(const ReqValue& v, const GqlTypeExpr& expected,
                     const std::string& subject) {
        if (v.kind == ReqValue::Kind::Variable) {
            used_.insert(v.text);
            auto it = declared_.find(v.text);
            if (it == declared_.end()) {
                add("undeclared-variable", subject, "$" + v.text + " is not declared");
                return;
            }
            if (!variable_compatible(it->second->type, expected,
                                     it->second->default_value.has_value())) {
                add("variable-type-mismatch", subject,
                    "$" + v.text + ": " + to_string(it->second->type) +
                        " does not satisfy " + to_string(expected));
            }
            return;
        }
        if (const auto* nn = std::get_if<GqlNonNull>(&expected.node)) {
            if (v.kind == ReqValue::Kind::Null) {
                add("null-for-non-null", subject, "");
                return;
            }
            check_value(v, *nn->inner, subject);
            return;
        }
        if (v.kind == ReqValue::Kind::Null) {
            return;
        }
        if (const auto* list = std::get_if<GqlList>(&expected.node)) {
            if (v.kind != ReqValue::Kind::List) {
                add("bad-argument-value", subject, "expected a list");
                return;
            }
            for (const auto& item : v.list) {
                check_value(item, *list->inner, subject);
            }
            return;
        }
        const std::string& name = expected.as<GqlNamed>().name;
        NamedKind kind = named_kind(schema_, name);
        switch (kind) {
        case NamedKind::BuiltinScalar:
        case NamedKind::DeclaredScalar:
            if (!scalar_accepts(name, v)) {
                add("bad-argument-value", subject, "value does not fit scalar " + name);
            }
            return;
        case NamedKind::Enum: {
            if (v.kind != ReqValue::Kind::Enum) {
                add("bad-argument-value", subject, "expected an enum value of " + name);
                return;
            }
            const GqlTypeDecl* decl = schema_.find(name);
            if (std::find(decl->enum_values.begin(), decl->enum_values.end(), v.text) ==
                decl->enum_values.end()) {
                add("bad-argument-value", subject,
                    "\"" + v.text + "\" is not a value of enum " + name);
            }
            return;
        }
        case NamedKind::Input: {
            if (v.kind != ReqValue::Kind::Object) {
                add("bad-argument-value", subject, "expected an input object of " + name);
                return;
            }
            const GqlTypeDecl* decl = schema_.find(name);
            std::set<std::string> present;
            for (const auto& [fname, fvalue] : v.object) {
                present.insert(fname);
                const GqlField* field = nullptr;
                for (const auto& f : decl->fields) {
                    if (f.name == fname) {
                        field = &f;
                        break;
                    }
                }
                if (field == nullptr) {
                    add("unknown-field", subject + "." + fname,
                        "input object " + name + " has no such field");
                    continue;
                }
                check_value(fvalue, field->type, subject + "." + fname);
            }
            for (const auto& f : decl->fields) {
                if (f.type.is<GqlNonNull>() && present.count(f.name) == 0) {
                    add("missing-argument", subject + "." + f.name,
                        "non-null input field must be provided");
                }
            }
            return;
        }
        case NamedKind::Object:
            add("bad-argument-type", subject,
                "\"" + name + "\" is an output type and cannot take argument values");
            return;
        case NamedKind::Unknown:
            add("undefined-reference", subject, "\"" + name + "\" is not declared");
            return;
        }
    }

    bool variable_compatible(const GqlTypeExpr& var, const GqlTypeExpr& location,
                             bool has_default) {
        if (const auto* loc_nn = std::get_if<GqlNonNull>(&location.node)) {
            if (const auto* var_nn = std::get_if<GqlNonNull>(&var.node)) {
                return variable_compatible(*var_nn->inner, *loc_nn->inner, has_default);
            }
            return has_default && variable_compatible(var, *loc_nn->inner, has_default);
        }
        if (const auto* var_nn = std::get_if<GqlNonNull>(&var.node)) {
            return variable_compatible(*var_nn->inner, location, has_default);
        }
        if (const auto* loc_list = std::get_if<GqlList>(&location.node)) {
            const auto* var_list = std::get_if<GqlList>(&var.node);
            return var_list != nullptr &&
                   variable_compatible(*var_list->inner, *loc_list->inner, has_default);
        }
        if (var.is<GqlList>()) {
            return false;
        }
        return var.as<GqlNamed>().name == location.as<GqlNamed>().name;
    }

    const RequestDoc& doc_;
    const SchemaDoc& schema_;
    std::map<std::string, const VariableDef*> declared_;
    std::set<std::string> used_;
    std::vector<Violation> violations_;
};

} // namespace

std::vector<Violation> validate_request(const RequestDoc& doc, const SchemaDoc& schema) {
    return RequestChecker(doc, schema).run();
}

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

namespace {

std::string key_to_string(const json& key) {
    if (key.is_string()) {
        return key.get<std::string>();
    }
    if (key.is_boolean()) {
        return key.get<bool>() ? "true" : "false";
    }
    return key.dump();
}

json parse_key(const std::string& key, const std::string& scalar) {
    if (scalar == "Int" || scalar == "Long" || scalar == "Short" || scalar == "Byte" ||
        scalar == "BigInteger") {
        try {
            std::size_t used = 0;
            long long v = std::stoll(key, &used);
            if (used == key.size()) {
                return v;
            }
        } catch (...) {
        }
        return key;
    }
    if (scalar == "Float" || scalar == "Double" || scalar == "BigDecimal") {
        try {
            std::size_t used = 0;
            double v = std::stod(key, &used);
            if (used == key.size()) {
                return v;
            }
        } catch (...) {
        }
        return key;
    }
    if (scalar == "Boolean") {
        return key == "true";
    }
    return key;
}

/// Outbound rendering of coercible scalars: 64-bit integers beyond the safe
/// double range travel as strings; numeric strings inside the range become
/// numbers again.
json render_scalar(const json& value, const std::string& scalar) {
    if (scalar == "Long" || scalar == "BigInteger") {
        if (value.is_number_integer()) {
            long long v = value.get<long long>();
            if (v > kSafeIntegerMax || v < -kSafeIntegerMax) {
                return std::to_string(v);
            }
            return v;
        }
        if (value.is_string()) {
            const std::string& s = value.get<std::string>();
            try {
                std::size_t used = 0;
                long long v = std::stoll(s, &used);
                if (used == s.size() && v <= kSafeIntegerMax && v >= -kSafeIntegerMax) {
                    return v;
                }
            } catch (...) {
            }
            return s;
        }
    }
    return value;
}

/// Inbound coercion toward the backend: lexical strings become int64 values
/// when they fit exactly; everything else passes through.
json coerce_inbound_scalar(const json& value, const std::string& scalar) {
    if ((scalar == "Long" || scalar == "BigInteger" || scalar == "Short" ||
         scalar == "Byte") &&
        value.is_string()) {
        const std::string& s = value.get<std::string>();
        try {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used == s.size()) {
                return v;
            }
        } catch (...) {
        }
    }
    return value;
}

} // namespace

json map_to_entry_list(const json& map_value, const std::string& key_scalar) {
    if (!map_value.is_object()) {
        return json::array();
    }
    json entries = json::array();
    for (const auto& [k, v] : map_value.items()) {
        entries.push_back(json{{"key", parse_key(k, key_scalar)}, {"value", v}});
    }
    return entries;
}

json entry_list_to_map(const json& entries, const std::string& key_scalar) {
    (void)key_scalar; // keys stringify the same way for every scalar kind
    json out = json::object();
    if (!entries.is_array()) {
        return out;
    }
    for (const auto& entry : entries) {
        if (!entry.is_object() || !entry.contains("key")) {
            continue;
        }
        out[key_to_string(entry["key"])] = entry.value("value", json{});
    }
    return out;
}

json apply_transform(const Transform& t, const json& value, const BindingManifest& manifest,
                     PlanDirection direction) {
    if (value.is_null()) {
        return value;
    }
    switch (t.kind) {
    case TransformKind::Identity:
        return value;
    case TransformKind::ScalarCoerce:
        if (value.is_array()) {
            json out = json::array();
            for (const auto& item : value) {
                out.push_back(apply_transform(t, item, manifest, direction));
            }
            return out;
        }
        return direction == PlanDirection::Outbound ? render_scalar(value, t.scalar)
                                                    : coerce_inbound_scalar(value, t.scalar);
    case TransformKind::MapToEntryList: {
        json entries = map_to_entry_list(value, t.scalar);
        if (t.value) {
            for (auto& entry : entries) {
                entry["value"] = apply_transform(**t.value, entry["value"], manifest, direction);
            }
        }
        return entries;
    }
    case TransformKind::EntryListToMap: {
        json transformed = value;
        if (t.value && transformed.is_array()) {
            for (auto& entry : transformed) {
                if (entry.is_object() && entry.contains("value")) {
                    entry["value"] =
                        apply_transform(**t.value, entry["value"], manifest, direction);
                }
            }
        }
        return entry_list_to_map(transformed, t.scalar);
    }
    case TransformKind::Nested: {
        if (value.is_array()) {
            json out = json::array();
            for (const auto& item : value) {
                out.push_back(apply_transform(t, item, manifest, direction));
            }
            return out;
        }
        if (!value.is_object()) {
            return value;
        }
        const ObjectMappingPlan* plan = manifest.plan(t.plan);
        if (plan == nullptr) {
            return value;
        }
        json out = json::object();
        for (const auto& step : plan->steps) {
            if (!value.contains(step.source_field)) {
                continue;
            }
            out[step.target_field] =
                apply_transform(step.transform, value[step.source_field], manifest, direction);
        }
        return out;
    }
    }
    return value;
}

// ---------------------------------------------------------------------------
// execute
// ---------------------------------------------------------------------------

namespace {

json resolve_req_value(const ReqValue& v, const RequestDoc& doc, const json& variables) {
    switch (v.kind) {
    case ReqValue::Kind::Null:
        return nullptr;
    case ReqValue::Kind::Bool:
        return v.bool_value;
    case ReqValue::Kind::Int:
        return v.int_value;
    case ReqValue::Kind::Float:
        return v.float_value;
    case ReqValue::Kind::String:
    case ReqValue::Kind::Enum:
        return v.text;
    case ReqValue::Kind::List: {
        json out = json::array();
        for (const auto& item : v.list) {
            out.push_back(resolve_req_value(item, doc, variables));
        }
        return out;
    }
    case ReqValue::Kind::Object: {
        json out = json::object();
        for (const auto& [name, value] : v.object) {
            out[name] = resolve_req_value(value, doc, variables);
        }
        return out;
    }
    case ReqValue::Kind::Variable: {
        if (variables.is_object() && variables.contains(v.text)) {
            return variables[v.text];
        }
        for (const auto& var : doc.variables) {
            if (var.name == v.text && var.default_value) {
                return resolve_req_value(*var.default_value, doc, variables);
            }
        }
        return nullptr;
    }
    }
    return nullptr;
}

std::string scalar_to_path_string(const json& value) {
    if (value.is_string()) {
        return value.get<std::string>();
    }
    if (value.is_boolean()) {
        return value.get<bool>() ? "true" : "false";
    }
    return value.dump();
}

class Executor {
public:
    Executor(const RequestDoc& doc, const json& variables, const SchemaDoc& schema,
             const BindingManifest& manifest, const BackendAdapter& backend,
             const std::vector<std::pair<std::string, std::string>>& headers)
        : doc_(doc),
          variables_(variables),
          schema_(schema),
          manifest_(manifest),
          backend_(backend),
          headers_(headers) {}

    ordered_json run() {
        ordered_json data = ordered_json::object();
        const Rws root = doc_.kind == RequestKind::Query ? Rws::Read : Rws::Write;
        const char* root_name = doc_.kind == RequestKind::Query ? "Query" : "Mutation";
        std::size_t backend_fields = 0;
        std::size_t transport_failures = 0;

        for (const auto& sel : doc_.selections) {
            if (sel.field == "__typename") {
                data[sel.alias] = root_name;
                continue;
            }
            ++backend_fields;
            const Binding* binding = manifest_.find(root, sel.field);
            const GqlField* field = schema_.find_root_field(root, sel.field);
            if (binding == nullptr || field == nullptr) {
                data[sel.alias] = nullptr;
                push_error("no binding for field " + sel.field, sel.alias);
                continue;
            }
            try {
                data[sel.alias] = resolve_root(sel, *binding, *field);
            } catch (const TransportError& e) {
                ++transport_failures;
                data[sel.alias] = nullptr;
                push_error(e.what(), sel.alias);
            }
        }
        if (backend_fields > 0 && transport_failures == backend_fields) {
            throw TransportError("backend unreachable for every root selection");
        }
        ordered_json response;
        response["data"] = std::move(data);
        if (!errors_.empty()) {
            response["errors"] = errors_;
        }
        return response;
    }

private:
    void push_error(const std::string& message, const std::string& alias) {
        ordered_json err;
        err["message"] = message;
        err["path"] = ordered_json::array({alias});
        errors_.push_back(std::move(err));
    }

    ordered_json resolve_root(const Selection& sel, const Binding& binding,
                              const GqlField& field) {
        BackendCallData call;
        call.method = binding.backend.method;
        call.path = binding.backend.path_template;
        call.headers = headers_;

        std::map<std::string, json> args;
        for (const auto& [name, value] : sel.args) {
            args[name] = resolve_req_value(value, doc_, variables_);
        }
        for (const auto& pb : binding.backend.param_bindings) {
            json value = nullptr;
            if (auto it = args.find(pb.gql_arg); it != args.end()) {
                value = it->second;
            }
            switch (pb.location) {
            case ParamLocation::Path: {
                if (value.is_null()) {
                    // An unresolved placeholder cannot form a backend path.
                    push_error("missing value for path parameter " + pb.source_param +
                                   " of " + sel.field,
                               sel.alias);
                    return nullptr;
                }
                json coerced = apply_transform(pb.transform, value, manifest_,
                                               PlanDirection::Inbound);
                const std::string placeholder = "{" + pb.source_param + "}";
                auto pos = call.path.find(placeholder);
                if (pos != std::string::npos) {
                    call.path.replace(pos, placeholder.size(),
                                      scalar_to_path_string(coerced));
                }
                break;
            }
            case ParamLocation::Query: {
                if (value.is_null()) {
                    break;
                }
                json coerced = apply_transform(pb.transform, value, manifest_,
                                               PlanDirection::Inbound);
                if (coerced.is_array()) {
                    for (const auto& item : coerced) {
                        call.query.emplace_back(pb.source_param, scalar_to_path_string(item));
                    }
                } else {
                    call.query.emplace_back(pb.source_param, scalar_to_path_string(coerced));
                }
                break;
            }
            case ParamLocation::Body:
                if (!value.is_null()) {
                    call.body = apply_transform(pb.transform, value, manifest_,
                                                PlanDirection::Inbound);
                }
                break;
            }
        }

        BackendResponse response = backend_.invoke(call);
        if (response.status >= 400 || response.status == 0) {
            push_error("backend returned " + std::to_string(response.status) + " for " +
                           to_string(call.method) + " " + call.path,
                       sel.alias);
            return nullptr;
        }
        if (binding.void_result) {
            return true;
        }
        json value = response.body;
        for (const auto& step : binding.unwrap_steps) {
            if (value.is_object() && value.contains(step)) {
                value = value[step];
            }
        }
        return shape(value, binding.result, sel.subselections, field.type.named());
    }

    /// Applies the result transform while pruning to the selection: the
    /// response carries exactly the requested fields, keyed by alias.
    ordered_json shape(const json& value, const Transform& t,
                       const std::vector<Selection>& subsels, const std::string& type_name) {
        if (value.is_null()) {
            return nullptr;
        }
        switch (t.kind) {
        case TransformKind::ScalarCoerce:
            if (value.is_array()) {
                ordered_json out = ordered_json::array();
                for (const auto& item : value) {
                    out.push_back(shape(item, t, subsels, type_name));
                }
                return out;
            }
            return render_scalar(value, t.scalar);
        case TransformKind::MapToEntryList:
            return shape_entries(value, t, subsels, type_name);
        case TransformKind::Nested: {
            if (value.is_array()) {
                ordered_json out = ordered_json::array();
                for (const auto& item : value) {
                    out.push_back(shape(item, t, subsels, type_name));
                }
                return out;
            }
            if (!value.is_object()) {
                return nullptr;
            }
            const ObjectMappingPlan* plan = manifest_.plan(t.plan);
            const GqlTypeDecl* decl = schema_.find(type_name);
            ordered_json out = ordered_json::object();
            for (const auto& sub : subsels) {
                if (sub.field == "__typename") {
                    out[sub.alias] = type_name;
                    continue;
                }
                const MappingStep* step = plan ? plan->step_for(sub.field) : nullptr;
                if (step == nullptr || !value.contains(step->source_field)) {
                    out[sub.alias] = nullptr;
                    continue;
                }
                out[sub.alias] = shape(value[step->source_field], step->transform,
                                       sub.subselections,
                                       subfield_type(decl, sub.field));
            }
            return out;
        }
        case TransformKind::EntryListToMap:
        case TransformKind::Identity:
            break;
        }
        if (value.is_array()) {
            ordered_json out = ordered_json::array();
            for (const auto& item : value) {
                out.push_back(shape(item, t, subsels, type_name));
            }
            return out;
        }
        if (!subsels.empty() && value.is_object()) {
            // Untransformed composite: prune by field name directly.
            const GqlTypeDecl* decl = schema_.find(type_name);
            ordered_json out = ordered_json::object();
            for (const auto& sub : subsels) {
                if (sub.field == "__typename") {
                    out[sub.alias] = type_name;
                    continue;
                }
                out[sub.alias] = value.contains(sub.field)
                                     ? shape(value[sub.field], Transform::identity(),
                                             sub.subselections, subfield_type(decl, sub.field))
                                     : ordered_json(nullptr);
            }
            return out;
        }
        return value;
    }

    ordered_json shape_entries(const json& value, const Transform& t,
                               const std::vector<Selection>& subsels,
                               const std::string& entry_type) {
        json entries = map_to_entry_list(value, t.scalar);
        const GqlTypeDecl* decl = schema_.find(entry_type);
        ordered_json out = ordered_json::array();
        for (const auto& entry : entries) {
            ordered_json shaped = ordered_json::object();
            for (const auto& sub : subsels) {
                if (sub.field == "__typename") {
                    shaped[sub.alias] = entry_type;
                } else if (sub.field == "key") {
                    shaped[sub.alias] = render_scalar(entry["key"], t.scalar);
                } else if (sub.field == "value") {
                    Transform value_transform =
                        t.value ? **t.value : Transform::identity();
                    shaped[sub.alias] = shape(entry["value"], value_transform,
                                              sub.subselections,
                                              subfield_type(decl, "value"));
                } else {
                    shaped[sub.alias] = nullptr;
                }
            }
            out.push_back(std::move(shaped));
        }
        return out;
    }

    std::string subfield_type(const GqlTypeDecl* decl, const std::string& field) const {
        if (decl == nullptr) {
            return "";
        }
        for (const auto& f : decl->fields) {
            if (f.name == field) {
                return f.type.named();
            }
        }
        return "";
    }

    const RequestDoc& doc_;
    const json& variables_;
    const SchemaDoc& schema_;
    const BindingManifest& manifest_;
    const BackendAdapter& backend_;
    const std::vector<std::pair<std::string, std::string>>& headers_;
    ordered_json errors_ = ordered_json::array();
};

} // namespace

ordered_json execute(const RequestDoc& doc, const json& variables, const SchemaDoc& schema,
                     const BindingManifest& manifest, const BackendAdapter& backend,
                     const std::vector<std::pair<std::string, std::string>>& headers) {
    return Executor(doc, variables, schema, manifest, backend, headers).run();
}

} // namespace restql
