#include "restql/apiir.hpp"

#include "restql/errors.hpp"

#include <set>

namespace restql {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& message, const std::string& path) {
    throw IngestError(message, path);
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        fail("expected a JSON object", path);
    }
}

void expect_array(const json& j, const std::string& path) {
    if (!j.is_array()) {
        fail("expected a JSON array", path);
    }
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, _] : obj.items()) {
        if (allowed.count(key) == 0) {
            fail("unknown key \"" + key + "\"", path);
        }
    }
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        fail("missing or non-string \"" + key + "\"", path);
    }
    return it->get<std::string>();
}

bool get_bool(const json& obj, const std::string& key, bool fallback, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        return fallback;
    }
    if (!it->is_boolean()) {
        fail("\"" + key + "\" must be a boolean", path);
    }
    return it->get<bool>();
}

SourceType parse_type(const json& j, const std::string& path);

std::vector<SourceType> parse_type_args(const json& obj, const std::string& path) {
    std::vector<SourceType> args;
    auto it = obj.find("typeArgs");
    if (it == obj.end()) {
        return args;
    }
    expect_array(*it, path + "/typeArgs");
    for (std::size_t i = 0; i < it->size(); ++i) {
        args.push_back(parse_type((*it)[i], path + "/typeArgs/" + std::to_string(i)));
    }
    return args;
}

SourceType parse_type(const json& j, const std::string& path) {
    expect_object(j, path);
    const std::string kind = get_string(j, "kind", path);
    if (kind == "primitive") {
        check_keys(j, {"kind", "name", "format"}, path);
        SourcePrimitive p;
        p.name = get_string(j, "name", path);
        if (auto it = j.find("format"); it != j.end()) {
            if (!it->is_string()) {
                fail("\"format\" must be a string", path);
            }
            p.format_hint = it->get<std::string>();
        }
        return {std::move(p)};
    }
    if (kind == "named") {
        check_keys(j, {"kind", "name", "typeArgs"}, path);
        SourceNamed n;
        n.qualified_name = get_string(j, "name", path);
        if (n.qualified_name.find('?') != std::string::npos ||
            n.qualified_name.find('*') != std::string::npos) {
            fail("wildcard generic arguments are not supported", path);
        }
        n.type_args = parse_type_args(j, path);
        return {std::move(n)};
    }
    if (kind == "list") {
        check_keys(j, {"kind", "component"}, path);
        auto it = j.find("component");
        if (it == j.end()) {
            fail("list type needs \"component\"", path);
        }
        return src_list(parse_type(*it, path + "/component"));
    }
    if (kind == "map") {
        check_keys(j, {"kind", "key", "value"}, path);
        auto k = j.find("key");
        auto v = j.find("value");
        if (k == j.end() || v == j.end()) {
            fail("map type needs \"key\" and \"value\"", path);
        }
        return src_map(parse_type(*k, path + "/key"), parse_type(*v, path + "/value"));
    }
    if (kind == "void") {
        check_keys(j, {"kind"}, path);
        return src_void();
    }
    if (kind == "nullable") {
        check_keys(j, {"kind", "inner", "required"}, path);
        auto it = j.find("inner");
        if (it == j.end()) {
            fail("nullable marker needs \"inner\"", path);
        }
        return src_required(parse_type(*it, path + "/inner"),
                            get_bool(j, "required", false, path));
    }
    fail("unknown type kind \"" + kind + "\"", path);
}

bool location_default_required(ParamLocation loc) { return loc == ParamLocation::Path; }

SourceParam parse_param(const json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, {"name", "type", "location", "required"}, path);
    SourceParam p;
    p.name = get_string(j, "name", path);
    auto loc = param_location_from_string(get_string(j, "location", path));
    if (!loc) {
        fail("parameter location must be path, query, or body", path);
    }
    p.location = *loc;
    auto it = j.find("type");
    if (it == j.end()) {
        fail("parameter needs \"type\"", path);
    }
    p.type = parse_type(*it, path + "/type");
    p.required = get_bool(j, "required", location_default_required(p.location), path);
    return p;
}

SourceOperation parse_operation(const json& j, const std::string& path) {
    expect_object(j, path);
    check_keys(j, {"name", "httpMethod", "path", "params", "returns", "location"}, path);
    SourceOperation op;
    op.name = get_string(j, "name", path);
    auto method = http_method_from_string(get_string(j, "httpMethod", path));
    if (!method) {
        fail("httpMethod must be one of GET, POST, PUT, PATCH, DELETE", path);
    }
    op.http_method = *method;
    op.path = get_string(j, "path", path);
    if (auto it = j.find("params"); it != j.end()) {
        expect_array(*it, path + "/params");
        for (std::size_t i = 0; i < it->size(); ++i) {
            op.params.push_back(parse_param((*it)[i], path + "/params/" + std::to_string(i)));
        }
    }
    auto ret = j.find("returns");
    if (ret == j.end()) {
        fail("operation needs \"returns\"", path);
    }
    op.return_type = parse_type(*ret, path + "/returns");
    auto loc = j.find("location");
    if (loc == j.end()) {
        fail("operation needs \"location\"", path);
    }
    expect_object(*loc, path + "/location");
    check_keys(*loc, {"file", "line"}, path + "/location");
    op.location.file = get_string(*loc, "file", path + "/location");
    auto line = loc->find("line");
    if (line == loc->end() || !line->is_number_integer()) {
        fail("location needs integer \"line\"", path + "/location");
    }
    op.location.line = line->get<int>();
    return op;
}

TypeDecl parse_decl(const json& j, const std::string& path) {
    expect_object(j, path);
    const std::string kind = get_string(j, "kind", path);
    TypeDecl decl;
    if (kind == "object") {
        check_keys(j, {"kind", "typeParams", "fields"}, path);
        decl.kind = DeclKind::Object;
        if (auto it = j.find("typeParams"); it != j.end()) {
            expect_array(*it, path + "/typeParams");
            for (const auto& p : *it) {
                if (!p.is_string()) {
                    fail("type parameters must be strings", path + "/typeParams");
                }
                decl.type_params.push_back(p.get<std::string>());
            }
        }
        if (auto it = j.find("fields"); it != j.end()) {
            expect_array(*it, path + "/fields");
            for (std::size_t i = 0; i < it->size(); ++i) {
                const json& jf = (*it)[i];
                const std::string fpath = path + "/fields/" + std::to_string(i);
                expect_object(jf, fpath);
                check_keys(jf, {"name", "type", "required", "transient"}, fpath);
                SourceField f;
                f.name = get_string(jf, "name", fpath);
                auto t = jf.find("type");
                if (t == jf.end()) {
                    fail("field needs \"type\"", fpath);
                }
                f.type = parse_type(*t, fpath + "/type");
                f.required = get_bool(jf, "required", false, fpath);
                f.transient = get_bool(jf, "transient", false, fpath);
                decl.fields.push_back(std::move(f));
            }
        }
        return decl;
    }
    if (kind == "interface") {
        check_keys(j, {"kind", "operations"}, path);
        decl.kind = DeclKind::Interface;
        if (auto it = j.find("operations"); it != j.end()) {
            expect_array(*it, path + "/operations");
            for (std::size_t i = 0; i < it->size(); ++i) {
                const json& jo = (*it)[i];
                const std::string opath = path + "/operations/" + std::to_string(i);
                expect_object(jo, opath);
                check_keys(jo, {"name", "type", "parameterized"}, opath);
                SourceInterfaceOp o;
                o.name = get_string(jo, "name", opath);
                auto t = jo.find("type");
                if (t == jo.end()) {
                    fail("interface operation needs \"type\"", opath);
                }
                o.return_type = parse_type(*t, opath + "/type");
                o.parameterized = get_bool(jo, "parameterized", false, opath);
                decl.operations.push_back(std::move(o));
            }
        }
        return decl;
    }
    if (kind == "enum") {
        check_keys(j, {"kind", "values"}, path);
        decl.kind = DeclKind::Enum;
        auto it = j.find("values");
        if (it == j.end()) {
            fail("enum declaration needs \"values\"", path);
        }
        expect_array(*it, path + "/values");
        for (const auto& v : *it) {
            if (!v.is_string()) {
                fail("enum values must be strings", path + "/values");
            }
            decl.values.push_back(v.get<std::string>());
        }
        return decl;
    }
    if (kind == "unknown") {
        check_keys(j, {"kind"}, path);
        decl.kind = DeclKind::Unknown;
        return decl;
    }
    fail("unknown declaration kind \"" + kind + "\"", path);
}

} // namespace

ApiSurface load_apiir(const std::string& document) {
    json root = json::parse(document, nullptr, false);
    if (root.is_discarded()) {
        throw IngestError("document is not valid JSON", "/");
    }
    expect_object(root, "/");
    check_keys(root, {"apiirVersion", "metadata", "services", "typeDecls"}, "/");
    auto version = root.find("apiirVersion");
    if (version == root.end() || !version->is_string()) {
        fail("missing \"apiirVersion\"", "/");
    }
    if (version->get<std::string>() != "1") {
        fail("unsupported apiirVersion \"" + version->get<std::string>() + "\"", "/apiirVersion");
    }

    ApiSurface surface;
    surface.metadata.plugin = "apiir";
    if (auto it = root.find("metadata"); it != root.end()) {
        expect_object(*it, "/metadata");
        check_keys(*it, {"source"}, "/metadata");
        if (auto src = it->find("source"); src != it->end()) {
            if (!src->is_string()) {
                fail("\"source\" must be a string", "/metadata");
            }
            surface.metadata.source = src->get<std::string>();
        }
    }

    auto services = root.find("services");
    if (services == root.end()) {
        fail("missing \"services\"", "/");
    }
    expect_array(*services, "/services");
    for (std::size_t i = 0; i < services->size(); ++i) {
        const json& js = (*services)[i];
        const std::string spath = "/services/" + std::to_string(i);
        expect_object(js, spath);
        check_keys(js, {"namespace", "operations"}, spath);
        SourceService service;
        service.namespace_name = get_string(js, "namespace", spath);
        if (auto ops = js.find("operations"); ops != js.end()) {
            expect_array(*ops, spath + "/operations");
            for (std::size_t k = 0; k < ops->size(); ++k) {
                service.operations.push_back(
                    parse_operation((*ops)[k], spath + "/operations/" + std::to_string(k)));
            }
        }
        surface.services.push_back(std::move(service));
    }

    if (auto decls = root.find("typeDecls"); decls != root.end()) {
        expect_object(*decls, "/typeDecls");
        for (const auto& [name, jd] : decls->items()) {
            surface.type_decls[name] = parse_decl(jd, "/typeDecls/" + name);
        }
    }

    auto violations = validate_surface(surface);
    if (!violations.empty()) {
        fail(to_string(violations.front()), "/");
    }
    return surface;
}

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

namespace {

json type_to_json(const SourceType& t) {
    json j;
    if (const auto* p = std::get_if<SourcePrimitive>(&t.node)) {
        j["kind"] = "primitive";
        j["name"] = p->name;
        if (p->format_hint) {
            j["format"] = *p->format_hint;
        }
    } else if (const auto* n = std::get_if<SourceNamed>(&t.node)) {
        j["kind"] = "named";
        j["name"] = n->qualified_name;
        if (!n->type_args.empty()) {
            j["typeArgs"] = json::array();
            for (const auto& arg : n->type_args) {
                j["typeArgs"].push_back(type_to_json(arg));
            }
        }
    } else if (const auto* l = std::get_if<SourceList>(&t.node)) {
        j["kind"] = "list";
        j["component"] = type_to_json(*l->component);
    } else if (const auto* m = std::get_if<SourceMap>(&t.node)) {
        j["kind"] = "map";
        j["key"] = type_to_json(*m->key);
        j["value"] = type_to_json(*m->value);
    } else if (t.is<SourceVoid>()) {
        j["kind"] = "void";
    } else if (const auto* marker = std::get_if<SourceNullableMarker>(&t.node)) {
        j["kind"] = "nullable";
        j["inner"] = type_to_json(*marker->inner);
        j["required"] = marker->required;
    }
    return j;
}

} // namespace

json serialize_apiir(const ApiSurface& surface) {
    json root;
    root["apiirVersion"] = "1";
    if (!surface.metadata.source.empty()) {
        root["metadata"] = json{{"source", surface.metadata.source}};
    }
    root["services"] = json::array();
    for (const auto& service : surface.services) {
        json js;
        js["namespace"] = service.namespace_name;
        if (!service.operations.empty()) {
            js["operations"] = json::array();
            for (const auto& op : service.operations) {
                json jo;
                jo["name"] = op.name;
                jo["httpMethod"] = to_string(op.http_method);
                jo["path"] = op.path;
                if (!op.params.empty()) {
                    jo["params"] = json::array();
                    for (const auto& p : op.params) {
                        json jp;
                        jp["name"] = p.name;
                        jp["type"] = type_to_json(p.type);
                        jp["location"] = to_string(p.location);
                        if (p.required != location_default_required(p.location)) {
                            jp["required"] = p.required;
                        }
                        jo["params"].push_back(std::move(jp));
                    }
                }
                jo["returns"] = type_to_json(op.return_type);
                jo["location"] = json{{"file", op.location.file}, {"line", op.location.line}};
                js["operations"].push_back(std::move(jo));
            }
        }
        root["services"].push_back(std::move(js));
    }
    if (!surface.type_decls.empty()) {
        root["typeDecls"] = json::object();
        for (const auto& [name, decl] : surface.type_decls) {
            json jd;
            jd["kind"] = to_string(decl.kind);
            if (!decl.type_params.empty()) {
                jd["typeParams"] = decl.type_params;
            }
            if (decl.kind == DeclKind::Object && !decl.fields.empty()) {
                jd["fields"] = json::array();
                for (const auto& f : decl.fields) {
                    json jf;
                    jf["name"] = f.name;
                    jf["type"] = type_to_json(f.type);
                    if (f.required) {
                        jf["required"] = true;
                    }
                    if (f.transient) {
                        jf["transient"] = true;
                    }
                    jd["fields"].push_back(std::move(jf));
                }
            }
            if (decl.kind == DeclKind::Interface && !decl.operations.empty()) {
                jd["operations"] = json::array();
                for (const auto& o : decl.operations) {
                    json jo;
                    jo["name"] = o.name;
                    jo["type"] = type_to_json(o.return_type);
                    if (o.parameterized) {
                        jo["parameterized"] = true;
                    }
                    jd["operations"].push_back(std::move(jo));
                }
            }
            if (decl.kind == DeclKind::Enum) {
                jd["values"] = decl.values;
            }
            root["typeDecls"][name] = std::move(jd);
        }
    }
    return root;
}

ApiSurface ApiIrPlugin::load(const std::string& document,
                             const std::string& source_locator) const {
    ApiSurface surface = load_apiir(document);
    if (surface.metadata.source.empty()) {
        surface.metadata.source = source_locator;
    }
    return surface;
}

} // namespace restql
