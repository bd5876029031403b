#pragma once

// Independent value-level interpreters over source types and mapped type
// definitions. These acceptors intentionally avoid the production mapping
// path: the soundness property asserts both sides accept the same values.

#include "restql/api_surface.hpp"
#include "restql/defmodel.hpp"

#include <json.hpp>

#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <string>

namespace restql::test {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Random source types (depth-bounded; primitives, lists, objects, markers)
// ---------------------------------------------------------------------------

struct TypeGen {
    std::mt19937 rng;
    std::map<std::string, TypeDecl> decls;
    int counter = 0;

    explicit TypeGen(unsigned seed) : rng(seed) {}

    int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

    SourceType gen_scalar() {
        switch (pick(7)) {
        case 0: return src_primitive("int");
        case 1: return src_primitive("long");
        case 2: return src_primitive("double");
        case 3: return src_primitive("string");
        case 4: return src_primitive("boolean");
        case 5: return src_primitive("string", "date-time");
        default: return src_primitive("integer", "int64");
        }
    }

    SourceType gen(int depth) {
        if (depth <= 0) {
            return gen_scalar();
        }
        switch (pick(6)) {
        case 0:
        case 1:
            return gen_scalar();
        case 2:
            return src_list(gen(depth - 1));
        case 3:
            return src_required(gen(depth - 1), true);
        default: {
            std::string name = "gen.T" + std::to_string(counter++);
            TypeDecl decl;
            decl.kind = DeclKind::Object;
            int fields = 1 + pick(3);
            for (int i = 0; i < fields; ++i) {
                SourceField f;
                f.name = "f" + std::to_string(i);
                f.type = gen(depth - 1);
                f.required = pick(4) == 0;
                decl.fields.push_back(std::move(f));
            }
            decls[name] = std::move(decl);
            return src_named(name);
        }
        }
    }
};

// ---------------------------------------------------------------------------
// Value samples (conforming plus random corruptions)
// ---------------------------------------------------------------------------

struct ValueGen {
    std::mt19937 rng;

    explicit ValueGen(unsigned seed) : rng(seed) {}

    int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

    json random_scalar() {
        switch (pick(5)) {
        case 0: return pick(200) - 100;
        case 1: return static_cast<double>(pick(1000)) / 8.0;
        case 2: return "s" + std::to_string(pick(1000));
        case 3: return pick(2) == 0;
        default: return nullptr;
        }
    }

    json conforming(const SourceType& t, const std::map<std::string, TypeDecl>& decls,
                    int depth = 6) {
        if (depth <= 0) {
            return nullptr;
        }
        if (const auto* marker = std::get_if<SourceNullableMarker>(&t.node)) {
            json inner = conforming(*marker->inner, decls, depth - 1);
            if (marker->required && inner.is_null()) {
                return conforming(*marker->inner, decls, depth - 1);
            }
            return inner;
        }
        if (const auto* p = std::get_if<SourcePrimitive>(&t.node)) {
            const std::string& n = p->name;
            if (n == "int" || n == "integer") {
                return pick(1000) - 500;
            }
            if (n == "long") {
                return static_cast<std::int64_t>(pick(1000)) * 1000003LL;
            }
            if (n == "double") {
                return static_cast<double>(pick(1000)) / 4.0;
            }
            if (n == "boolean") {
                return pick(2) == 0;
            }
            return "v" + std::to_string(pick(100));
        }
        if (const auto* l = std::get_if<SourceList>(&t.node)) {
            json arr = json::array();
            int n = pick(3);
            for (int i = 0; i < n; ++i) {
                arr.push_back(conforming(*l->component, decls, depth - 1));
            }
            return arr;
        }
        if (const auto* named = std::get_if<SourceNamed>(&t.node)) {
            auto it = decls.find(named->qualified_name);
            if (it == decls.end()) {
                return nullptr;
            }
            json obj = json::object();
            for (const auto& f : it->second.fields) {
                if (f.required || pick(3) != 0) {
                    json v = conforming(f.type, decls, depth - 1);
                    if (f.required && v.is_null()) {
                        v = conforming(f.type, decls, depth - 1);
                    }
                    obj[f.name] = v;
                }
            }
            return obj;
        }
        return nullptr;
    }

    /// Randomly corrupts one node so acceptors get negative samples too.
    json corrupt(json value) {
        switch (pick(4)) {
        case 0: return "corrupted";
        case 1: return json::array({value});
        case 2:
            if (value.is_object()) {
                value["__extra"] = 1;
                return value;
            }
            return 12.5;
        default:
            if (value.is_object() && !value.empty()) {
                value.begin().value() = json::array({1, 2});
                return value;
            }
            return json::object({{"unexpected", true}});
        }
    }
};

// ---------------------------------------------------------------------------
// Acceptor over source types
// ---------------------------------------------------------------------------

inline bool fits_int32(const json& v) {
    if (!v.is_number_integer()) {
        return false;
    }
    auto x = v.get<std::int64_t>();
    return x >= std::numeric_limits<std::int32_t>::min() &&
           x <= std::numeric_limits<std::int32_t>::max();
}

inline bool accepts_source(const SourceType& t, const json& v,
                           const std::map<std::string, TypeDecl>& decls) {
    if (const auto* marker = std::get_if<SourceNullableMarker>(&t.node)) {
        if (marker->required && v.is_null()) {
            return false;
        }
        if (v.is_null()) {
            return true;
        }
        return accepts_source(*marker->inner, v, decls);
    }
    if (v.is_null()) {
        return true; // nullable by default
    }
    if (const auto* p = std::get_if<SourcePrimitive>(&t.node)) {
        const std::string& n = p->name;
        if (n == "int" || n == "integer") {
            if (p->format_hint == std::optional<std::string>("int64") || n == "long") {
                return v.is_number_integer();
            }
            return fits_int32(v);
        }
        if (n == "long") {
            return v.is_number_integer();
        }
        if (n == "double" || n == "float" || n == "number") {
            return v.is_number();
        }
        if (n == "boolean") {
            return v.is_boolean();
        }
        return v.is_string(); // string-family, incl. date-time hints
    }
    if (const auto* l = std::get_if<SourceList>(&t.node)) {
        if (!v.is_array()) {
            return false;
        }
        for (const auto& item : v) {
            if (!accepts_source(*l->component, item, decls)) {
                return false;
            }
        }
        return true;
    }
    if (const auto* m = std::get_if<SourceMap>(&t.node)) {
        if (!v.is_object()) {
            return false;
        }
        for (const auto& [_, item] : v.items()) {
            if (!accepts_source(*m->value, item, decls)) {
                return false;
            }
        }
        return true;
    }
    if (const auto* named = std::get_if<SourceNamed>(&t.node)) {
        auto it = decls.find(named->qualified_name);
        if (it == decls.end() || !v.is_object()) {
            return false;
        }
        for (const auto& [key, item] : v.items()) {
            const SourceField* field = nullptr;
            for (const auto& f : it->second.fields) {
                if (f.name == key) {
                    field = &f;
                    break;
                }
            }
            if (field == nullptr) {
                return false;
            }
            if (!accepts_source(field->type, item, decls)) {
                return false;
            }
        }
        for (const auto& f : it->second.fields) {
            if (f.required && (!v.contains(f.name) || v[f.name].is_null())) {
                return false;
            }
        }
        return true;
    }
    return v.is_null(); // void
}

// ---------------------------------------------------------------------------
// Acceptor over mapped type definitions
// ---------------------------------------------------------------------------

inline bool accepts_typedef(const TypeDef& def, const json& v,
                            const std::map<std::string, TypeDef>& pool) {
    if (const auto* nn = std::get_if<NonNullDef>(&def.node)) {
        return !v.is_null() && accepts_typedef(*nn->inner, v, pool);
    }
    if (v.is_null()) {
        return true;
    }
    if (const auto* lit = std::get_if<LiteralDef>(&def.node)) {
        const std::string name = to_string(lit->scalar);
        if (name == "Int" || name == "Short" || name == "Byte") {
            return fits_int32(v);
        }
        if (name == "Long" || name == "BigInteger") {
            return v.is_number_integer();
        }
        if (name == "Float" || name == "Double" || name == "BigDecimal") {
            return v.is_number();
        }
        if (name == "Boolean") {
            return v.is_boolean();
        }
        return v.is_string(); // String, ID, Char, date/time scalars, custom
    }
    if (const auto* list = std::get_if<ListDef>(&def.node)) {
        if (!v.is_array()) {
            return false;
        }
        for (const auto& item : v) {
            if (!accepts_typedef(*list->component, item, pool)) {
                return false;
            }
        }
        return true;
    }
    if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
        if (!v.is_object()) {
            return false;
        }
        for (const auto& [key, item] : v.items()) {
            if (key != "key" && key != "value") {
                return false;
            }
        }
        return accepts_typedef(*entry->key, v.value("key", json{}), pool) &&
               accepts_typedef(*entry->value, v.value("value", json{}), pool);
    }
    if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
        if (!v.is_object()) {
            return false;
        }
        for (const auto& [key, item] : v.items()) {
            const FieldDef* field = nullptr;
            for (const auto& f : obj->fields) {
                if (f.backend_name() == key) {
                    field = &f;
                    break;
                }
            }
            if (field == nullptr) {
                return false;
            }
            if (!accepts_typedef(*field->type, item, pool)) {
                return false;
            }
        }
        for (const auto& f : obj->fields) {
            if (!f.nullable && (!v.contains(f.backend_name()) || v[f.backend_name()].is_null())) {
                return false;
            }
        }
        return true;
    }
    if (const auto* ref = std::get_if<TypeRef>(&def.node)) {
        auto it = pool.find(ref->name);
        return it != pool.end() && accepts_typedef(it->second, v, pool);
    }
    if (def.is<VoidDef>()) {
        return v.is_null();
    }
    return false;
}

} // namespace restql::test
