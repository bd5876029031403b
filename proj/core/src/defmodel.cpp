#include "restql/defmodel.hpp"

#include "restql/errors.hpp"
#include "restql/naming.hpp"

#include <algorithm>
#include <set>

namespace restql {

std::string to_string(BuiltinScalar s) {
    switch (s) {
    case BuiltinScalar::Int: return "Int";
    case BuiltinScalar::Float: return "Float";
    case BuiltinScalar::String: return "String";
    case BuiltinScalar::Boolean: return "Boolean";
    case BuiltinScalar::Id: return "ID";
    }
    return "Int";
}

std::string to_string(ExtendedScalar s) {
    switch (s) {
    case ExtendedScalar::Long: return "Long";
    case ExtendedScalar::Double: return "Double";
    case ExtendedScalar::Char: return "Char";
    case ExtendedScalar::Byte: return "Byte";
    case ExtendedScalar::Short: return "Short";
    case ExtendedScalar::BigInteger: return "BigInteger";
    case ExtendedScalar::BigDecimal: return "BigDecimal";
    case ExtendedScalar::DateTime: return "DateTime";
    case ExtendedScalar::Date: return "Date";
    case ExtendedScalar::Time: return "Time";
    }
    return "Long";
}

std::string to_string(const ScalarKind& kind) {
    if (const auto* b = std::get_if<BuiltinScalar>(&kind.value)) {
        return to_string(*b);
    }
    if (const auto* e = std::get_if<ExtendedScalar>(&kind.value)) {
        return to_string(*e);
    }
    return std::get<std::string>(kind.value);
}

namespace {

const std::vector<std::pair<std::string, BuiltinScalar>>& builtin_table() {
    static const std::vector<std::pair<std::string, BuiltinScalar>> table = {
        {"Int", BuiltinScalar::Int},
        {"Float", BuiltinScalar::Float},
        {"String", BuiltinScalar::String},
        {"Boolean", BuiltinScalar::Boolean},
        {"ID", BuiltinScalar::Id},
    };
    return table;
}

const std::vector<std::pair<std::string, ExtendedScalar>>& extended_table() {
    static const std::vector<std::pair<std::string, ExtendedScalar>> table = {
        {"Long", ExtendedScalar::Long},
        {"Double", ExtendedScalar::Double},
        {"Char", ExtendedScalar::Char},
        {"Byte", ExtendedScalar::Byte},
        {"Short", ExtendedScalar::Short},
        {"BigInteger", ExtendedScalar::BigInteger},
        {"BigDecimal", ExtendedScalar::BigDecimal},
        {"DateTime", ExtendedScalar::DateTime},
        {"Date", ExtendedScalar::Date},
        {"Time", ExtendedScalar::Time},
    };
    return table;
}

} // namespace

bool is_builtin_scalar_name(const std::string& name) {
    const auto& t = builtin_table();
    return std::any_of(t.begin(), t.end(), [&](const auto& p) { return p.first == name; });
}

bool is_extended_scalar_name(const std::string& name) {
    const auto& t = extended_table();
    return std::any_of(t.begin(), t.end(), [&](const auto& p) { return p.first == name; });
}

ScalarKind scalar_kind_from_name(const std::string& name) {
    for (const auto& [text, s] : builtin_table()) {
        if (text == name) {
            return ScalarKind::builtin(s);
        }
    }
    for (const auto& [text, s] : extended_table()) {
        if (text == name) {
            return ScalarKind::extended(s);
        }
    }
    return ScalarKind::custom(name);
}

std::string to_string(Rws rws) { return rws == Rws::Read ? "READ" : "WRITE"; }

std::string to_string(HttpMethod m) {
    switch (m) {
    case HttpMethod::Get: return "GET";
    case HttpMethod::Post: return "POST";
    case HttpMethod::Put: return "PUT";
    case HttpMethod::Patch: return "PATCH";
    case HttpMethod::Delete: return "DELETE";
    }
    return "GET";
}

std::optional<HttpMethod> http_method_from_string(const std::string& s) {
    if (s == "GET") return HttpMethod::Get;
    if (s == "POST") return HttpMethod::Post;
    if (s == "PUT") return HttpMethod::Put;
    if (s == "PATCH") return HttpMethod::Patch;
    if (s == "DELETE") return HttpMethod::Delete;
    return std::nullopt;
}

std::string to_string(ParamLocation loc) {
    switch (loc) {
    case ParamLocation::Path: return "path";
    case ParamLocation::Query: return "query";
    case ParamLocation::Body: return "body";
    }
    return "query";
}

std::optional<ParamLocation> param_location_from_string(const std::string& s) {
    if (s == "path") return ParamLocation::Path;
    if (s == "query") return ParamLocation::Query;
    if (s == "body") return ParamLocation::Body;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// validate_defmodel
// ---------------------------------------------------------------------------

namespace {

class ModelChecker {
public:
    explicit ModelChecker(const DefModel& model) : model_(model) {}

    std::vector<Violation> run() {
        for (const auto& [name, def] : model_.types) {
            check_declaration(name, def);
        }
        for (const auto& op : model_.operations) {
            for (const auto& p : op.params) {
                check_expr(p.type, op.name + "." + p.name, false);
            }
            check_expr(op.output, op.name, false);
        }
        check_operation_names();
        check_rename_log();
        return std::move(violations_);
    }

private:
    void add(std::string rule, std::string subject, std::string detail = "") {
        violations_.push_back({std::move(rule), std::move(subject), std::move(detail)});
    }

    // Declarations in the pool may be MapEntryDefs at top level; their
    // internals are still checked as expressions.
    void check_declaration(const std::string& name, const TypeDef& def) {
        if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
            std::set<std::string> seen;
            for (const auto& f : obj->fields) {
                if (!seen.insert(f.name).second) {
                    add("duplicate-field", obj->name + "." + f.name);
                }
                check_expr(*f.type, obj->name + "." + f.name, false);
            }
            if (!obj->type_args.empty() && obj->name == simple_name(obj->source_name)) {
                add("unmangled-instantiation", obj->name,
                    "monomorphized type must not reuse the bare source name");
            }
        } else if (const auto* iface = std::get_if<InterfaceDef>(&def.node)) {
            std::set<std::string> seen;
            for (const auto& f : iface->operations) {
                if (!seen.insert(f.name).second) {
                    add("duplicate-field", iface->name + "." + f.name);
                }
                check_expr(*f.type, iface->name + "." + f.name, false);
            }
        } else if (const auto* en = std::get_if<EnumDef>(&def.node)) {
            std::set<std::string> seen;
            for (const auto& v : en->values) {
                if (!seen.insert(v).second) {
                    add("duplicate-enum-value", en->name + "." + v);
                }
            }
        } else if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
            check_expr(*entry->key, name + ".key", false);
            check_expr(*entry->value, name + ".value", false);
        } else if (def.is<LiteralDef>()) {
            // custom scalar declaration
        } else {
            add("bad-pool-entry", name, "only named definitions belong in the type pool");
        }
    }

    void check_expr(const TypeDef& def, const std::string& where, bool parent_is_list) {
        if (const auto* nn = std::get_if<NonNullDef>(&def.node)) {
            if (nn->inner->is<NonNullDef>()) {
                add("nested-non-null", where);
            }
            if (nn->inner->is<VoidDef>()) {
                add("non-null-void", where);
            }
            check_expr(*nn->inner, where, false);
        } else if (const auto* list = std::get_if<ListDef>(&def.node)) {
            if (list->component->is<VoidDef>()) {
                add("void-list-component", where);
            }
            check_expr(*list->component, where, true);
        } else if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
            if (!parent_is_list) {
                add("map-entry-position", where,
                    "MapEntryDef must appear as the component of a ListDef");
            }
            check_expr(*entry->key, where + ".key", false);
            check_expr(*entry->value, where + ".value", false);
        } else if (const auto* ref = std::get_if<TypeRef>(&def.node)) {
            if (model_.types.find(ref->name) == model_.types.end()) {
                add("unresolved-reference", ref->name, "referenced from " + where);
            }
        } else if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
            // Inline object in an expression position: still check internals.
            check_declaration(obj->name, def);
        } else if (const auto* iface = std::get_if<InterfaceDef>(&def.node)) {
            check_declaration(iface->name, def);
        }
    }

    void check_operation_names() {
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& op : model_.operations) {
            if (!seen.insert({to_string(op.rws), op.name}).second) {
                add("duplicate-operation", op.name, "per-root names must be unique");
            }
        }
    }

    void check_rename_log() {
        std::set<std::string> assigned;
        for (const auto& r : model_.rename_log) {
            if (!assigned.insert(r.assigned).second) {
                add("rename-not-injective", r.assigned);
            }
        }
    }

    const DefModel& model_;
    std::vector<Violation> violations_;
};

} // namespace

std::vector<Violation> validate_defmodel(const DefModel& model) {
    return ModelChecker(model).run();
}

// ---------------------------------------------------------------------------
// Canonical JSON
// ---------------------------------------------------------------------------

nlohmann::json to_json(const TypeDef& def) {
    using nlohmann::json;
    json j;
    if (const auto* lit = std::get_if<LiteralDef>(&def.node)) {
        j["kind"] = "literal";
        j["scalar"] = to_string(lit->scalar);
    } else if (def.is<VoidDef>()) {
        j["kind"] = "void";
    } else if (const auto* nn = std::get_if<NonNullDef>(&def.node)) {
        j["kind"] = "nonNull";
        j["inner"] = to_json(*nn->inner);
    } else if (const auto* list = std::get_if<ListDef>(&def.node)) {
        j["kind"] = "list";
        j["component"] = to_json(*list->component);
    } else if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
        j["kind"] = "mapEntry";
        j["entryName"] = entry->entry_name;
        j["key"] = to_json(*entry->key);
        j["value"] = to_json(*entry->value);
    } else if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
        j["kind"] = "object";
        j["name"] = obj->name;
        j["sourceName"] = obj->source_name;
        j["fields"] = json::array();
        for (const auto& f : obj->fields) {
            json jf;
            jf["name"] = f.name;
            jf["type"] = to_json(*f.type);
            if (!f.nullable) {
                jf["nullable"] = false;
            }
            if (!f.source_name.empty() && f.source_name != f.name) {
                jf["sourceName"] = f.source_name;
            }
            j["fields"].push_back(std::move(jf));
        }
        if (!obj->type_args.empty()) {
            j["typeArgs"] = json::array();
            for (const auto& arg : obj->type_args) {
                j["typeArgs"].push_back(to_json(arg));
            }
        }
    } else if (const auto* iface = std::get_if<InterfaceDef>(&def.node)) {
        j["kind"] = "interface";
        j["name"] = iface->name;
        j["operations"] = json::array();
        for (const auto& f : iface->operations) {
            json jf;
            jf["name"] = f.name;
            jf["type"] = to_json(*f.type);
            j["operations"].push_back(std::move(jf));
        }
    } else if (const auto* en = std::get_if<EnumDef>(&def.node)) {
        j["kind"] = "enum";
        j["name"] = en->name;
        j["values"] = en->values;
    } else if (const auto* ref = std::get_if<TypeRef>(&def.node)) {
        j["kind"] = "ref";
        j["name"] = ref->name;
    }
    return j;
}

nlohmann::json to_json(const OperationDef& op) {
    using nlohmann::json;
    json j;
    j["name"] = op.name;
    j["sourceId"] = op.source_id;
    j["rws"] = to_string(op.rws);
    j["params"] = json::array();
    for (const auto& p : op.params) {
        json jp;
        jp["name"] = p.name;
        jp["type"] = to_json(p.type);
        if (p.required) {
            jp["required"] = true;
        }
        j["params"].push_back(std::move(jp));
    }
    j["output"] = to_json(op.output);
    json jb;
    jb["method"] = to_string(op.backend.method);
    jb["path"] = op.backend.path_template;
    if (!op.backend.params.empty()) {
        jb["params"] = json::array();
        for (const auto& ps : op.backend.params) {
            json jps;
            jps["param"] = ps.param;
            jps["location"] = to_string(ps.location);
            jps["sourceParam"] = ps.source_param;
            jb["params"].push_back(std::move(jps));
        }
    }
    j["backend"] = std::move(jb);
    return j;
}

nlohmann::json to_json(const DefModel& model) {
    using nlohmann::json;
    json j;
    j["operations"] = json::array();
    for (const auto& op : model.operations) {
        j["operations"].push_back(to_json(op));
    }
    j["types"] = json::object();
    for (const auto& [name, def] : model.types) {
        j["types"][name] = to_json(def);
    }
    if (!model.wrapper_log.empty()) {
        j["wrapperLog"] = json::array();
        for (const auto& w : model.wrapper_log) {
            json jw;
            jw["wrapper"] = w.wrapper;
            jw["context"] = w.context;
            jw["inner"] = w.inner;
            j["wrapperLog"].push_back(std::move(jw));
        }
    }
    if (!model.rename_log.empty()) {
        j["renameLog"] = json::array();
        for (const auto& r : model.rename_log) {
            json jr;
            jr["original"] = r.original;
            jr["assigned"] = r.assigned;
            jr["cause"] = r.cause;
            j["renameLog"].push_back(std::move(jr));
        }
    }
    return j;
}

std::string to_canonical_json(const DefModel& model) { return to_json(model).dump(); }

} // namespace restql
