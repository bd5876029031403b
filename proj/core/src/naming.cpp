#include "restql/naming.hpp"

#include "restql/errors.hpp"

#include <cctype>

namespace restql {

bool is_valid_graphql_name(const std::string& name) {
    if (name.empty()) {
        return false;
    }
    auto head = static_cast<unsigned char>(name[0]);
    if (!(std::isalpha(head) || name[0] == '_')) {
        return false;
    }
    for (char c : name) {
        auto uc = static_cast<unsigned char>(c);
        if (!(std::isalnum(uc) || c == '_')) {
            return false;
        }
    }
    return true;
}

std::string normalize_identifier(const std::string& source_name) {
    std::string out;
    out.reserve(source_name.size() + 1);
    bool has_substance = false;
    for (char c : source_name) {
        auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc) || c == '_') {
            out.push_back(c);
            if (std::isalnum(uc)) {
                has_substance = true;
            }
        } else {
            out.push_back('_');
        }
    }
    if (!has_substance) {
        throw Error("cannot derive a GraphQL identifier from \"" + source_name + "\"");
    }
    if (std::isdigit(static_cast<unsigned char>(out[0]))) {
        out.insert(out.begin(), '_');
    }
    return out;
}

std::string simple_name(const std::string& qualified_name) {
    auto pos = qualified_name.rfind('.');
    return pos == std::string::npos ? qualified_name : qualified_name.substr(pos + 1);
}

std::string capitalize(const std::string& name) {
    if (name.empty()) {
        return name;
    }
    std::string out = name;
    out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    return out;
}

std::string name_fragment(const TypeDef& def) {
    if (const auto* lit = std::get_if<LiteralDef>(&def.node)) {
        return to_string(lit->scalar);
    }
    if (def.is<VoidDef>()) {
        return "Void";
    }
    if (const auto* nn = std::get_if<NonNullDef>(&def.node)) {
        return name_fragment(*nn->inner);
    }
    if (const auto* list = std::get_if<ListDef>(&def.node)) {
        return "ListOf" + name_fragment(*list->component);
    }
    if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
        return entry->entry_name;
    }
    if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
        return obj->name;
    }
    if (const auto* iface = std::get_if<InterfaceDef>(&def.node)) {
        return iface->name;
    }
    if (const auto* en = std::get_if<EnumDef>(&def.node)) {
        return en->name;
    }
    return def.as<TypeRef>().name;
}

std::string map_entry_name(const TypeDef& key, const TypeDef& value) {
    return normalize_identifier(name_fragment(key) + name_fragment(value) + "Entry");
}

std::string canonical_name(const TypeDef& def, NameScheme scheme) {
    if (scheme == NameScheme::ListWrapper) {
        // A list definition already carries its ListOf prefix through its
        // fragment; anything else gets wrapped.
        if (def.is<ListDef>()) {
            return normalize_identifier(name_fragment(def));
        }
        return normalize_identifier("ListOf" + name_fragment(def));
    }
    if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
        // Instantiations always carry their arguments in the name so each
        // unique (base, args) tuple keeps a distinct identity.
        if (!obj->type_args.empty()) {
            std::string base = scheme == NameScheme::FullyQualified
                                   ? obj->source_name
                                   : simple_name(obj->source_name);
            std::string out = base + "Of";
            for (const auto& arg : obj->type_args) {
                out += name_fragment(arg);
            }
            return normalize_identifier(out);
        }
        return normalize_identifier(scheme == NameScheme::FullyQualified
                                        ? obj->source_name
                                        : simple_name(obj->source_name));
    }
    if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
        return map_entry_name(*entry->key, *entry->value);
    }
    if (const auto* iface = std::get_if<InterfaceDef>(&def.node)) {
        return normalize_identifier(scheme == NameScheme::FullyQualified
                                        ? iface->name
                                        : simple_name(iface->name));
    }
    if (const auto* en = std::get_if<EnumDef>(&def.node)) {
        return normalize_identifier(scheme == NameScheme::FullyQualified ? en->name
                                                                         : simple_name(en->name));
    }
    if (const auto* lit = std::get_if<LiteralDef>(&def.node)) {
        return normalize_identifier(to_string(lit->scalar));
    }
    if (const auto* ref = std::get_if<TypeRef>(&def.node)) {
        return ref->name;
    }
    throw Error("canonical_name requires a named type definition");
}

std::string overload_name(const std::string& operation_name,
                          const std::vector<std::string>& arg_type_names,
                          const std::string& result_type_name) {
    std::string out = operation_name + "Using";
    for (const auto& arg : arg_type_names) {
        out += capitalize(arg);
    }
    out += "Returns" + capitalize(result_type_name);
    return normalize_identifier(out);
}

} // namespace restql
