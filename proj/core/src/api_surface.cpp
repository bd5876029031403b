#include "restql/api_surface.hpp"

#include <set>

namespace restql {

std::string to_string(DeclKind kind) {
    switch (kind) {
    case DeclKind::Object: return "object";
    case DeclKind::Interface: return "interface";
    case DeclKind::Enum: return "enum";
    case DeclKind::Unknown: return "unknown";
    }
    return "object";
}

const SourceType& strip_markers(const SourceType& t) {
    const SourceType* cur = &t;
    while (const auto* marker = std::get_if<SourceNullableMarker>(&cur->node)) {
        cur = &*marker->inner;
    }
    return *cur;
}

std::string source_type_key(const SourceType& t) {
    const SourceType& s = strip_markers(t);
    if (const auto* p = std::get_if<SourcePrimitive>(&s.node)) {
        return p->format_hint ? p->name + ":" + *p->format_hint : p->name;
    }
    if (const auto* n = std::get_if<SourceNamed>(&s.node)) {
        if (n->type_args.empty()) {
            return n->qualified_name;
        }
        std::string key = n->qualified_name + "<";
        for (std::size_t i = 0; i < n->type_args.size(); ++i) {
            if (i > 0) {
                key += ",";
            }
            key += source_type_key(n->type_args[i]);
        }
        return key + ">";
    }
    if (const auto* l = std::get_if<SourceList>(&s.node)) {
        return "list<" + source_type_key(*l->component) + ">";
    }
    if (const auto* m = std::get_if<SourceMap>(&s.node)) {
        return "map<" + source_type_key(*m->key) + "," + source_type_key(*m->value) + ">";
    }
    return "void";
}

namespace {

// Path templates use single-segment placeholders: /api/articles/{id}
std::set<std::string> path_placeholders(const std::string& path) {
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

bool map_key_acceptable(const SourceType& key, const std::map<std::string, TypeDecl>& decls) {
    const SourceType& k = strip_markers(key);
    if (k.is<SourcePrimitive>()) {
        return true;
    }
    if (const auto* named = std::get_if<SourceNamed>(&k.node)) {
        auto it = decls.find(named->qualified_name);
        return it != decls.end() && it->second.kind == DeclKind::Enum;
    }
    return false;
}

void check_type(const SourceType& t, const std::map<std::string, TypeDecl>& decls,
                const std::string& where, std::vector<Violation>& out) {
    if (const auto* named = std::get_if<SourceNamed>(&t.node)) {
        for (const auto& arg : named->type_args) {
            check_type(arg, decls, where, out);
        }
    } else if (const auto* list = std::get_if<SourceList>(&t.node)) {
        check_type(*list->component, decls, where, out);
    } else if (const auto* map = std::get_if<SourceMap>(&t.node)) {
        if (!map_key_acceptable(*map->key, decls)) {
            out.push_back({"composite-map-key", where,
                           "map keys must be primitive or enum-named"});
        }
        check_type(*map->key, decls, where, out);
        check_type(*map->value, decls, where, out);
    } else if (const auto* marker = std::get_if<SourceNullableMarker>(&t.node)) {
        check_type(*marker->inner, decls, where, out);
    }
}

} // namespace

std::vector<Violation> validate_surface(const ApiSurface& surface) {
    std::vector<Violation> out;
    for (const auto& service : surface.services) {
        for (const auto& op : service.operations) {
            const std::string where = service.namespace_name + "." + op.name;
            auto placeholders = path_placeholders(op.path);
            int body_count = 0;
            std::set<std::string> param_names;
            for (const auto& p : op.params) {
                if (!param_names.insert(p.name).second) {
                    out.push_back({"duplicate-parameter", where + "." + p.name, ""});
                }
                if (p.location == ParamLocation::Body) {
                    ++body_count;
                }
                if (p.location == ParamLocation::Path && placeholders.count(p.name) == 0) {
                    out.push_back({"path-param-not-in-path", where + "." + p.name,
                                   "no {" + p.name + "} placeholder in " + op.path});
                }
                check_type(p.type, surface.type_decls, where + "." + p.name, out);
            }
            if (body_count > 1) {
                out.push_back({"multiple-body-params", where, ""});
            }
            check_type(op.return_type, surface.type_decls, where, out);
        }
    }
    for (const auto& [name, decl] : surface.type_decls) {
        for (const auto& f : decl.fields) {
            check_type(f.type, surface.type_decls, name + "." + f.name, out);
        }
        for (const auto& o : decl.operations) {
            check_type(o.return_type, surface.type_decls, name + "." + o.name, out);
        }
    }
    return out;
}

} // namespace restql
