#include "restql/openapi.hpp"

#include "restql/errors.hpp"
#include "restql/naming.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <set>

namespace restql {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// YAML normalization
// ---------------------------------------------------------------------------

json yaml_to_json(const YAML::Node& node) {
    switch (node.Type()) {
    case YAML::NodeType::Null:
        return nullptr;
    case YAML::NodeType::Scalar: {
        // Quoted scalars keep their string identity; plain scalars get the
        // usual YAML type resolution.
        if (node.Tag() == "!") {
            return node.as<std::string>();
        }
        const std::string& raw = node.Scalar();
        if (raw == "null" || raw == "~" || raw == "Null" || raw == "NULL") {
            return nullptr;
        }
        if (raw == "true" || raw == "True") {
            return true;
        }
        if (raw == "false" || raw == "False") {
            return false;
        }
        try {
            std::size_t used = 0;
            long long v = std::stoll(raw, &used);
            if (used == raw.size()) {
                return v;
            }
        } catch (...) {
        }
        try {
            std::size_t used = 0;
            double v = std::stod(raw, &used);
            if (used == raw.size()) {
                return v;
            }
        } catch (...) {
        }
        return raw;
    }
    case YAML::NodeType::Sequence: {
        json arr = json::array();
        for (const auto& item : node) {
            arr.push_back(yaml_to_json(item));
        }
        return arr;
    }
    case YAML::NodeType::Map: {
        json obj = json::object();
        for (const auto& kv : node) {
            obj[kv.first.as<std::string>()] = yaml_to_json(kv.second);
        }
        return obj;
    }
    default:
        return nullptr;
    }
}

// ---------------------------------------------------------------------------
// Schema conversion
// ---------------------------------------------------------------------------

const std::string kSchemaRefPrefix = "#/components/schemas/";

SourceType primitive_of(const json& schema, const std::string& type) {
    std::optional<std::string> format;
    if (auto it = schema.find("format"); it != schema.end() && it->is_string()) {
        format = it->get<std::string>();
    }
    return src_primitive(type, std::move(format));
}

/// Context-free mapping of leaf schemas; composites are handled by the
/// converter, which owns declaration naming.
std::optional<SourceType> map_plain_schema(const json& schema) {
    if (schema.contains("oneOf") || schema.contains("anyOf") || schema.contains("not")) {
        throw IngestError("unsupported construct: oneOf/anyOf/not schemas have no "
                          "type-preserving GraphQL mapping");
    }
    auto type_it = schema.find("type");
    if (type_it == schema.end() || !type_it->is_string()) {
        return std::nullopt;
    }
    const std::string type = type_it->get<std::string>();
    if (type == "integer" || type == "number" || type == "string" || type == "boolean") {
        if (type == "string" && schema.contains("enum")) {
            return std::nullopt; // enum declarations need a name
        }
        return primitive_of(schema, type);
    }
    return std::nullopt;
}

std::string camel_segment(const std::string& segment) {
    std::string cleaned;
    for (char c : segment) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cleaned.push_back(c);
        }
    }
    return capitalize(cleaned);
}

std::string derive_operation_name(HttpMethod method, const std::string& path) {
    std::string name = to_string(method);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    std::string segment;
    for (char c : path + "/") {
        if (c == '/') {
            if (!segment.empty()) {
                name += camel_segment(segment);
                segment.clear();
            }
        } else {
            segment.push_back(c);
        }
    }
    return name;
}

class Converter {
public:
    Converter(json document, std::string source, bool prefer_operation_id)
        : root_(std::move(document)) {
        binding_.source = std::move(source);
        binding_.prefer_operation_id = prefer_operation_id;
        surface_.metadata.plugin = "openapi";
        surface_.metadata.source = binding_.source;
    }

    ApiSurface run() {
        check_version();
        index_components();
        for (const auto& [name, schema] : binding_.schema_index) {
            declare_component(name, schema);
        }
        convert_paths();

        auto violations = validate_surface(surface_);
        if (!violations.empty()) {
            throw IngestError(to_string(violations.front()), binding_.source);
        }
        return std::move(surface_);
    }

private:
    void check_version() {
        if (!root_.is_object()) {
            throw IngestError("document is not a JSON object", "/");
        }
        if (root_.contains("swagger")) {
            throw IngestError("unsupported version: OpenAPI 2 (Swagger) documents are "
                              "not accepted",
                              "/swagger");
        }
        auto it = root_.find("openapi");
        if (it == root_.end() || !it->is_string()) {
            throw IngestError("missing \"openapi\" version field", "/");
        }
        const std::string version = it->get<std::string>();
        if (version.rfind("3.", 0) != 0) {
            throw IngestError("unsupported version \"" + version + "\"", "/openapi");
        }
    }

    void index_components() {
        const json* schemas = find_path(root_, {"components", "schemas"});
        if (schemas == nullptr || !schemas->is_object()) {
            return;
        }
        for (const auto& [name, schema] : schemas->items()) {
            binding_.schema_index[name] = schema;
        }
    }

    static const json* find_path(const json& j, std::initializer_list<const char*> keys) {
        const json* cur = &j;
        for (const char* key : keys) {
            if (!cur->is_object()) {
                return nullptr;
            }
            auto it = cur->find(key);
            if (it == cur->end()) {
                return nullptr;
            }
            cur = &*it;
        }
        return cur;
    }

    // Resolves a schema that may be a $ref. Returns the component name when
    // the schema is (or resolves through) a named component.
    const json& resolve(const json& schema, std::string* component_name,
                        const std::string& pointer) {
        auto it = schema.find("$ref");
        if (it == schema.end()) {
            return schema;
        }
        if (!it->is_string()) {
            throw IngestError("$ref must be a string", pointer);
        }
        const std::string ref = it->get<std::string>();
        if (ref.rfind(kSchemaRefPrefix, 0) != 0) {
            throw IngestError("unresolved ref \"" + ref +
                                  "\" (only #/components/schemas/* refs are supported)",
                              pointer);
        }
        const std::string name = ref.substr(kSchemaRefPrefix.size());
        auto target = binding_.schema_index.find(name);
        if (target == binding_.schema_index.end()) {
            throw IngestError("unresolved ref \"" + ref + "\"", pointer);
        }
        if (component_name != nullptr) {
            *component_name = name;
        }
        return target->second;
    }

    std::string fresh_decl_name(const std::string& hint) {
        std::string base;
        try {
            base = normalize_identifier(hint);
        } catch (const Error&) {
            base = "Anonymous";
        }
        std::string name = base;
        int n = 2;
        while (surface_.type_decls.count(name) > 0 || binding_.schema_index.count(name) > 0) {
            name = base + std::to_string(n++);
        }
        return name;
    }

    std::string declare_unknown(const std::string& hint) {
        std::string name = fresh_decl_name(hint);
        TypeDecl decl;
        decl.kind = DeclKind::Unknown;
        surface_.type_decls[name] = std::move(decl);
        return name;
    }

    /// Effective view of a schema with allOf composition merged. Cycles
    /// through allOf are detected via the active-merge stack.
    json effective_schema(const json& schema, const std::string& pointer) {
        auto all_of = schema.find("allOf");
        if (all_of == schema.end()) {
            return schema;
        }
        if (!all_of->is_array()) {
            throw IngestError("allOf must be an array", pointer);
        }
        json merged = schema;
        merged.erase("allOf");
        if (!merged.contains("type")) {
            merged["type"] = "object";
        }
        json properties = merged.value("properties", json::object());
        json required = merged.value("required", json::array());
        for (const auto& part : *all_of) {
            std::string component;
            const json& resolved = resolve(part, &component, pointer + "/allOf");
            if (!component.empty()) {
                if (allof_stack_.count(component) > 0) {
                    throw IngestError("cyclic ref through allOf composition at \"" +
                                          component + "\"",
                                      pointer);
                }
                allof_stack_.insert(component);
            }
            json part_view = effective_schema(resolved, pointer + "/allOf");
            if (!component.empty()) {
                allof_stack_.erase(component);
            }
            const json part_props = part_view.value("properties", json::object());
            for (const auto& [pname, pschema] : part_props.items()) {
                properties[pname] = pschema;
            }
            const json part_required = part_view.value("required", json::array());
            for (const auto& r : part_required) {
                required.push_back(r);
            }
        }
        if (!properties.empty()) {
            merged["properties"] = std::move(properties);
        }
        if (!required.empty()) {
            merged["required"] = std::move(required);
        }
        return merged;
    }

    /// Declares a named component schema as an object/enum/unknown decl.
    void declare_component(const std::string& name, const json& schema) {
        if (surface_.type_decls.count(name) > 0) {
            return;
        }
        surface_.type_decls[name] = TypeDecl{}; // reserve against recursion
        surface_.type_decls[name] = build_decl(name, schema, kSchemaRefPrefix + name);
    }

    TypeDecl build_decl(const std::string& name, const json& raw_schema,
                        const std::string& pointer) {
        TypeDecl decl;
        json schema;
        try {
            schema = effective_schema(raw_schema, pointer);
        } catch (const IngestError&) {
            throw;
        }
        if (schema.contains("oneOf") || schema.contains("anyOf") || schema.contains("not")) {
            decl.kind = DeclKind::Unknown;
            return decl;
        }
        if (schema.contains("enum")) {
            decl.kind = DeclKind::Enum;
            for (const auto& v : schema["enum"]) {
                decl.values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            }
            return decl;
        }
        const std::string type = schema.value("type", std::string{});
        const bool object_like = type == "object" || schema.contains("properties");
        if (!object_like) {
            // A named component that is really a scalar or array: keep the
            // declaration as a one-field object would misrepresent it, so
            // components like these are inlined at use sites instead. The
            // declaration itself becomes unknown only when unmappable.
            if (map_plain_schema(schema).has_value() || type == "array") {
                decl.kind = DeclKind::Object; // placeholder, alias handled at use sites
                alias_components_[name] = schema;
                return decl;
            }
            decl.kind = DeclKind::Unknown;
            return decl;
        }
        if (schema.contains("additionalProperties") && !schema.contains("properties")) {
            // Pure dictionary component: alias to map at use sites.
            decl.kind = DeclKind::Object;
            alias_components_[name] = schema;
            return decl;
        }
        decl.kind = DeclKind::Object;
        const json props = schema.value("properties", json::object());
        std::set<std::string> required_names;
        for (const auto& r : schema.value("required", json::array())) {
            if (r.is_string()) {
                required_names.insert(r.get<std::string>());
            }
        }
        for (const auto& [pname, pschema] : props.items()) {
            SourceField field;
            field.name = pname;
            field.required = required_names.count(pname) > 0;
            field.type = schema_to_type(pschema, name + capitalize(pname),
                                        pointer + "/properties/" + pname);
            decl.fields.push_back(std::move(field));
        }
        return decl;
    }

    /// Maps any schema position to a SourceType, synthesizing declarations
    /// for anonymous composites. `hint` seeds synthesized names.
    SourceType schema_to_type(const json& raw, const std::string& hint,
                              const std::string& pointer) {
        std::string component;
        const json& target = resolve(raw, &component, pointer);
        if (!component.empty()) {
            declare_component(component, target);
            if (auto alias = alias_components_.find(component); alias != alias_components_.end()) {
                return schema_to_type(alias->second, component, kSchemaRefPrefix + component);
            }
            return src_named(component);
        }

        json schema = effective_schema(target, pointer);
        if (schema.contains("oneOf") || schema.contains("anyOf") || schema.contains("not")) {
            return src_named(declare_unknown(hint));
        }
        if (schema.contains("enum")) {
            std::string name = fresh_decl_name(hint);
            surface_.type_decls[name] = build_decl(name, schema, pointer);
            return src_named(name);
        }
        if (auto plain = map_plain_schema(schema)) {
            return *plain;
        }
        const std::string type = schema.value("type", std::string{});
        if (type == "array") {
            auto items = schema.find("items");
            if (items == schema.end()) {
                return src_list(src_named(declare_unknown(hint + "Item")));
            }
            return src_list(schema_to_type(*items, hint + "Item", pointer + "/items"));
        }
        const bool object_like = type == "object" || schema.contains("properties") ||
                                 schema.contains("additionalProperties");
        if (object_like) {
            auto ap = schema.find("additionalProperties");
            if (ap != schema.end() && !schema.contains("properties")) {
                SourceType value = ap->is_object() && !ap->empty()
                                       ? schema_to_type(*ap, hint + "Value",
                                                        pointer + "/additionalProperties")
                                       : src_named(declare_unknown(hint + "Value"));
                return src_map(src_primitive("string"), std::move(value));
            }
            if (schema.contains("properties")) {
                std::string name = fresh_decl_name(hint);
                surface_.type_decls[name] = TypeDecl{};
                surface_.type_decls[name] = build_decl(name, schema, pointer);
                return src_named(name);
            }
            // `type: object` with no shape at all: nothing to preserve.
            return src_named(declare_unknown(hint));
        }
        if (type.empty()) {
            return src_named(declare_unknown(hint));
        }
        throw IngestError("unsupported schema type \"" + type + "\"", pointer);
    }

    void check_parameter_style(const json& param, ParamLocation location,
                               const std::string& pointer) {
        auto it = param.find("style");
        if (it == param.end() || !it->is_string()) {
            return;
        }
        const std::string style = it->get<std::string>();
        if (location == ParamLocation::Path && style != "simple") {
            throw IngestError("unsupported path parameter style \"" + style + "\"", pointer);
        }
        if (location == ParamLocation::Query && style != "form") {
            throw IngestError("unsupported query parameter style \"" + style + "\"", pointer);
        }
    }

    void convert_paths() {
        const json* paths = find_path(root_, {"paths"});
        std::map<std::string, SourceService> services;
        if (paths != nullptr && paths->is_object()) {
            for (const auto& [path, item] : paths->items()) {
                if (!item.is_object()) {
                    continue;
                }
                for (const auto& method_name : {"get", "post", "put", "patch", "delete"}) {
                    auto op_it = item.find(method_name);
                    if (op_it == item.end()) {
                        continue;
                    }
                    std::string upper = method_name;
                    std::transform(upper.begin(), upper.end(), upper.begin(),
                                   [](unsigned char c) { return std::toupper(c); });
                    HttpMethod method = *http_method_from_string(upper);
                    SourceOperation op =
                        convert_operation(path, method, *op_it, item, "/paths" + path);
                    std::string service = "default";
                    if (auto tags = op_it->find("tags");
                        tags != op_it->end() && tags->is_array() && !tags->empty() &&
                        (*tags)[0].is_string()) {
                        service = (*tags)[0].get<std::string>();
                    }
                    services[service].operations.push_back(std::move(op));
                }
            }
        }
        for (auto& [name, service] : services) {
            service.namespace_name = name;
            surface_.services.push_back(std::move(service));
        }
    }

    SourceOperation convert_operation(const std::string& path, HttpMethod method,
                                      const json& op_json, const json& path_item,
                                      const std::string& pointer) {
        SourceOperation op;
        op.http_method = method;
        op.path = path;
        op.location = {path, 0};
        if (binding_.prefer_operation_id && op_json.contains("operationId") &&
            op_json["operationId"].is_string()) {
            op.name = op_json["operationId"].get<std::string>();
        } else {
            op.name = derive_operation_name(method, path);
        }

        json parameters = path_item.value("parameters", json::array());
        for (const auto& p : op_json.value("parameters", json::array())) {
            parameters.push_back(p);
        }
        for (const auto& p : parameters) {
            if (!p.is_object()) {
                continue;
            }
            const std::string in = p.value("in", std::string{});
            if (in != "path" && in != "query") {
                continue; // header/cookie parameters are transport concerns
            }
            SourceParam param;
            param.name = p.value("name", std::string{});
            param.location = in == "path" ? ParamLocation::Path : ParamLocation::Query;
            check_parameter_style(p, param.location, pointer);
            param.required = p.value("required", param.location == ParamLocation::Path);
            auto schema = p.find("schema");
            if (schema == p.end()) {
                throw IngestError("parameter \"" + param.name + "\" has no schema", pointer);
            }
            param.type = schema_to_type(*schema, capitalize(op.name) + capitalize(param.name),
                                        pointer + "/parameters");
            op.params.push_back(std::move(param));
        }

        if (auto body = op_json.find("requestBody"); body != op_json.end()) {
            const json* schema = find_path(*body, {"content", "application/json", "schema"});
            if (schema == nullptr) {
                throw IngestError("requestBody without an application/json schema", pointer);
            }
            SourceParam param;
            param.name = "body";
            param.location = ParamLocation::Body;
            param.required = body->value("required", false);
            param.type =
                schema_to_type(*schema, capitalize(op.name) + "Body", pointer + "/requestBody");
            op.params.push_back(std::move(param));
        }

        op.return_type = response_type(op_json, op.name, pointer);
        return op;
    }

    SourceType response_type(const json& op_json, const std::string& op_name,
                             const std::string& pointer) {
        auto responses = op_json.find("responses");
        if (responses == op_json.end() || !responses->is_object()) {
            return src_void();
        }
        // The lowest 2xx status defines the return type; everything else is
        // out of scope for the schema.
        std::string best;
        for (const auto& [status, _] : responses->items()) {
            if (status.size() == 3 && status[0] == '2' && (best.empty() || status < best)) {
                best = status;
            }
        }
        if (best.empty()) {
            return src_void();
        }
        const json* schema =
            find_path((*responses)[best], {"content", "application/json", "schema"});
        if (schema == nullptr) {
            return src_void();
        }
        return schema_to_type(*schema, capitalize(op_name) + "Response",
                              pointer + "/responses/" + best);
    }

    json root_;
    OpenApiBinding binding_;
    ApiSurface surface_;
    std::map<std::string, json> alias_components_; // components that inline at use sites
    std::set<std::string> allof_stack_;
};

} // namespace

SourceType map_openapi_schema(const json& schema) {
    if (!schema.is_object()) {
        throw IngestError("schema must be a JSON object");
    }
    if (auto plain = map_plain_schema(schema)) {
        return *plain;
    }
    const std::string type = schema.value("type", std::string{});
    if (type == "array") {
        auto items = schema.find("items");
        if (items == schema.end()) {
            throw IngestError("array schema without items");
        }
        return src_list(map_openapi_schema(*items));
    }
    if (type == "object" && schema.contains("additionalProperties") &&
        !schema.contains("properties")) {
        return src_map(src_primitive("string"),
                       map_openapi_schema(schema["additionalProperties"]));
    }
    if (type == "object" || schema.contains("properties")) {
        return src_named(schema.value("title", "InlineObject"));
    }
    if (schema.contains("enum")) {
        return src_named(schema.value("title", "InlineEnum"));
    }
    throw IngestError("schema has no mappable type");
}

ApiSurface parse_openapi(const std::string& document, OpenApiFormat format,
                         const std::string& source_locator, bool prefer_operation_id) {
    json root;
    if (format == OpenApiFormat::Json) {
        root = json::parse(document, nullptr, false);
        if (root.is_discarded()) {
            throw IngestError("document is not valid JSON", source_locator);
        }
    } else {
        try {
            root = yaml_to_json(YAML::Load(document));
        } catch (const YAML::Exception& e) {
            throw IngestError(std::string("document is not valid YAML: ") + e.what(),
                              source_locator);
        }
    }
    return Converter(std::move(root), source_locator, prefer_operation_id).run();
}

ApiSurface OpenApiPlugin::load(const std::string& document,
                               const std::string& source_locator) const {
    OpenApiFormat format = OpenApiFormat::Json;
    auto ends_with = [&](const std::string& suffix) {
        return source_locator.size() >= suffix.size() &&
               source_locator.compare(source_locator.size() - suffix.size(), suffix.size(),
                                      suffix) == 0;
    };
    if (ends_with(".yaml") || ends_with(".yml")) {
        format = OpenApiFormat::Yaml;
    } else if (!source_locator.empty() && !ends_with(".json")) {
        // Sniff: YAML documents rarely start with '{'.
        for (char c : document) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                continue;
            }
            format = c == '{' ? OpenApiFormat::Json : OpenApiFormat::Yaml;
            break;
        }
    }
    return parse_openapi(document, format, source_locator);
}

} // namespace restql
