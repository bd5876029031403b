#include "restql/translator.hpp"

#include "restql/errors.hpp"
#include "restql/naming.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace restql {

const std::string& GqlTypeExpr::named() const {
    if (const auto* n = std::get_if<GqlNamed>(&node)) {
        return n->name;
    }
    if (const auto* l = std::get_if<GqlList>(&node)) {
        return l->inner->named();
    }
    return as<GqlNonNull>().inner->named();
}

std::string to_string(const GqlTypeExpr& expr) {
    if (const auto* n = std::get_if<GqlNamed>(&expr.node)) {
        return n->name;
    }
    if (const auto* l = std::get_if<GqlList>(&expr.node)) {
        return "[" + to_string(*l->inner) + "]";
    }
    return to_string(*expr.as<GqlNonNull>().inner) + "!";
}

std::string to_string(GqlTypeKind kind) {
    switch (kind) {
    case GqlTypeKind::Object: return "type";
    case GqlTypeKind::InputObject: return "input";
    case GqlTypeKind::Interface: return "interface";
    case GqlTypeKind::Enum: return "enum";
    case GqlTypeKind::Scalar: return "scalar";
    }
    return "type";
}

const GqlField* SchemaDoc::find_root_field(Rws root, const std::string& name) const {
    const auto& fields = root == Rws::Read ? query_root : mutation_root;
    for (const auto& f : fields) {
        if (f.name == name) {
            return &f;
        }
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// translate
// ---------------------------------------------------------------------------

namespace {

class Translator {
public:
    explicit Translator(const DefModel& model) : model_(model) {}

    SchemaDoc run() {
        declare_pool_types();
        for (const auto& op : model_.operations) {
            GqlField field;
            field.name = op.name;
            for (const auto& p : op.params) {
                GqlArg arg;
                arg.name = p.name;
                arg.type = expr_of(p.type, /*input=*/true);
                if (p.required && !arg.type.is<GqlNonNull>()) {
                    arg.type = gql_non_null(std::move(arg.type));
                }
                field.args.push_back(std::move(arg));
            }
            // Void outputs resolve to a nullable Boolean success flag.
            field.type = op.output.is<VoidDef>() ? gql_named("Boolean")
                                                 : expr_of(op.output, /*input=*/false);
            (op.rws == Rws::Read ? schema_.query_root : schema_.mutation_root)
                .push_back(std::move(field));
        }
        return std::move(schema_);
    }

private:
    void declare_pool_types() {
        for (const auto& [name, def] : model_.types) {
            if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
                GqlTypeDecl decl;
                decl.kind = GqlTypeKind::Object;
                decl.name = name;
                for (const auto& f : obj->fields) {
                    decl.fields.push_back(field_of(f, /*input=*/false));
                }
                schema_.types[name] = std::move(decl);
            } else if (const auto* iface = std::get_if<InterfaceDef>(&def.node)) {
                // Without implementors an interface cannot be executed
                // against, so interface definitions emit as object types.
                GqlTypeDecl decl;
                decl.kind = GqlTypeKind::Object;
                decl.name = name;
                for (const auto& f : iface->operations) {
                    decl.fields.push_back(field_of(f, /*input=*/false));
                }
                schema_.types[name] = std::move(decl);
            } else if (const auto* en = std::get_if<EnumDef>(&def.node)) {
                GqlTypeDecl decl;
                decl.kind = GqlTypeKind::Enum;
                decl.name = name;
                decl.enum_values = en->values;
                schema_.types[name] = std::move(decl);
            } else if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
                GqlTypeDecl decl;
                decl.kind = GqlTypeKind::Object;
                decl.name = name;
                decl.fields.push_back({"key", {}, expr_of(*entry->key, false)});
                decl.fields.push_back({"value", {}, expr_of(*entry->value, false)});
                schema_.types[name] = std::move(decl);
            } else if (def.is<LiteralDef>()) {
                GqlTypeDecl decl;
                decl.kind = GqlTypeKind::Scalar;
                decl.name = name;
                schema_.types[name] = std::move(decl);
            }
        }
    }

    GqlField field_of(const FieldDef& f, bool input) {
        GqlField out;
        out.name = f.name;
        out.type = expr_of(*f.type, input);
        if (!f.nullable && !out.type.is<GqlNonNull>()) {
            out.type = gql_non_null(std::move(out.type));
        }
        return out;
    }

    void declare_scalar(const ScalarKind& kind) {
        if (kind.is_builtin()) {
            return;
        }
        const std::string name = to_string(kind);
        if (schema_.types.count(name) == 0) {
            GqlTypeDecl decl;
            decl.kind = GqlTypeKind::Scalar;
            decl.name = name;
            schema_.types[name] = std::move(decl);
        }
    }

    GqlTypeExpr expr_of(const TypeDef& def, bool input) {
        if (const auto* lit = std::get_if<LiteralDef>(&def.node)) {
            declare_scalar(lit->scalar);
            return gql_named(to_string(lit->scalar));
        }
        if (def.is<VoidDef>()) {
            return gql_named("Boolean");
        }
        if (const auto* nn = std::get_if<NonNullDef>(&def.node)) {
            return gql_non_null(expr_of(*nn->inner, input));
        }
        if (const auto* list = std::get_if<ListDef>(&def.node)) {
            return gql_list(expr_of(*list->component, input));
        }
        if (const auto* entry = std::get_if<MapEntryDef>(&def.node)) {
            return gql_named(input ? input_name_for(entry->entry_name) : entry->entry_name);
        }
        if (const auto* ref = std::get_if<TypeRef>(&def.node)) {
            return named_ref(ref->name, input);
        }
        if (const auto* obj = std::get_if<ObjectDef>(&def.node)) {
            return named_ref(obj->name, input);
        }
        if (const auto* iface = std::get_if<InterfaceDef>(&def.node)) {
            return named_ref(iface->name, input);
        }
        return gql_named(def.as<EnumDef>().name);
    }

    GqlTypeExpr named_ref(const std::string& name, bool input) {
        const TypeDef* pooled = model_.find_type(name);
        if (pooled == nullptr) {
            return gql_named(name); // validator reports the dangling reference
        }
        if (pooled->is<EnumDef>() || pooled->is<LiteralDef>()) {
            return gql_named(name); // valid in both positions
        }
        return gql_named(input ? input_name_for(name) : name);
    }

    /// Ensures the input-object twin of a named composite exists.
    std::string input_name_for(const std::string& name) {
        if (auto it = input_names_.find(name); it != input_names_.end()) {
            return it->second;
        }
        std::string input_name = name + "Input";
        int n = 2;
        while (model_.types.count(input_name) > 0 || schema_.types.count(input_name) > 0) {
            input_name = name + "Input" + "_" + std::to_string(n++);
        }
        input_names_[name] = input_name;

        GqlTypeDecl decl;
        decl.kind = GqlTypeKind::InputObject;
        decl.name = input_name;
        schema_.types[input_name] = decl; // reserve before recursing (cycles)

        const TypeDef* pooled = model_.find_type(name);
        std::vector<GqlField> fields;
        if (pooled != nullptr) {
            if (const auto* obj = std::get_if<ObjectDef>(&pooled->node)) {
                for (const auto& f : obj->fields) {
                    fields.push_back(field_of(f, /*input=*/true));
                }
            } else if (const auto* iface = std::get_if<InterfaceDef>(&pooled->node)) {
                for (const auto& f : iface->operations) {
                    fields.push_back(field_of(f, /*input=*/true));
                }
            } else if (const auto* entry = std::get_if<MapEntryDef>(&pooled->node)) {
                fields.push_back({"key", {}, expr_of(*entry->key, true)});
                fields.push_back({"value", {}, expr_of(*entry->value, true)});
            }
        }
        schema_.types[input_name].fields = std::move(fields);
        return input_name;
    }

    const DefModel& model_;
    SchemaDoc schema_;
    std::map<std::string, std::string> input_names_;
};

} // namespace

SchemaDoc translate(const DefModel& model) { return Translator(model).run(); }

GqlTypeDecl to_input_type(const ObjectDef& obj, const DefModel& model) {
    // A probe operation routes the object through the same machinery
    // translate() uses, so nested objects rewrite to their Input
    // counterparts identically.
    DefModel probe = model;
    probe.operations.clear();
    probe.types.emplace(obj.name, TypeDef{obj});
    OperationDef op;
    op.name = "probe";
    op.source_id = "probe()";
    op.params.push_back({"value", type_ref(obj.name), false});
    op.output = literal(BuiltinScalar::Boolean);
    probe.operations.push_back(std::move(op));
    SchemaDoc full = translate(probe);
    auto it = full.types.find(obj.name + "Input");
    if (it == full.types.end()) {
        throw Error("input translation failed for " + obj.name);
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// print_sdl
// ---------------------------------------------------------------------------

namespace {

void print_field(std::ostringstream& out, const GqlField& field) {
    out << "  " << field.name;
    if (!field.args.empty()) {
        out << "(";
        for (std::size_t i = 0; i < field.args.size(); ++i) {
            if (i > 0) {
                out << ", ";
            }
            out << field.args[i].name << ": " << to_string(field.args[i].type);
        }
        out << ")";
    }
    out << ": " << to_string(field.type) << "\n";
}

void print_block(std::ostringstream& out, const char* keyword, const std::string& name,
                 const std::vector<GqlField>& fields, bool* first) {
    if (!*first) {
        out << "\n";
    }
    *first = false;
    out << keyword << " " << name << " {\n";
    for (const auto& f : fields) {
        print_field(out, f);
    }
    out << "}\n";
}

} // namespace

std::string print_sdl(const SchemaDoc& schema) {
    std::ostringstream out;
    bool first = true;

    std::vector<const GqlTypeDecl*> scalars, enums, interfaces, objects, inputs;
    for (const auto& [name, decl] : schema.types) { // std::map: already name-sorted
        switch (decl.kind) {
        case GqlTypeKind::Scalar: scalars.push_back(&decl); break;
        case GqlTypeKind::Enum: enums.push_back(&decl); break;
        case GqlTypeKind::Interface: interfaces.push_back(&decl); break;
        case GqlTypeKind::Object: objects.push_back(&decl); break;
        case GqlTypeKind::InputObject: inputs.push_back(&decl); break;
        }
    }

    if (!scalars.empty()) {
        first = false;
        for (const auto* decl : scalars) {
            out << "scalar " << decl->name << "\n";
        }
    }
    for (const auto* decl : enums) {
        if (!first) {
            out << "\n";
        }
        first = false;
        out << "enum " << decl->name << " {\n";
        for (const auto& v : decl->enum_values) {
            out << "  " << v << "\n";
        }
        out << "}\n";
    }
    for (const auto* decl : interfaces) {
        print_block(out, "interface", decl->name, decl->fields, &first);
    }
    for (const auto* decl : objects) {
        print_block(out, "type", decl->name, decl->fields, &first);
    }
    for (const auto* decl : inputs) {
        print_block(out, "input", decl->name, decl->fields, &first);
    }
    if (!schema.query_root.empty()) {
        print_block(out, "type", "Query", schema.query_root, &first);
    }
    if (!schema.mutation_root.empty()) {
        print_block(out, "type", "Mutation", schema.mutation_root, &first);
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// validate_schema
// ---------------------------------------------------------------------------

namespace {

bool is_builtin_gql_scalar(const std::string& name) {
    return name == "Int" || name == "Float" || name == "String" || name == "Boolean" ||
           name == "ID";
}

class SchemaChecker {
public:
    explicit SchemaChecker(const SchemaDoc& schema) : schema_(schema) {}

    std::vector<Violation> run() {
        if (schema_.query_root.empty()) {
            add("missing-query-root", "Query", "the Query root needs at least one field");
        }
        for (const auto& [name, decl] : schema_.types) {
            check_decl(decl);
        }
        check_fields("Query", schema_.query_root);
        check_fields("Mutation", schema_.mutation_root);
        if (schema_.types.count("Query") > 0) {
            add("duplicate-name", "Query", "collides with the reserved Query root");
        }
        if (schema_.types.count("Mutation") > 0 && !schema_.mutation_root.empty()) {
            add("duplicate-name", "Mutation", "collides with the reserved Mutation root");
        }
        return std::move(violations_);
    }

private:
    void add(std::string rule, std::string subject, std::string detail = "") {
        violations_.push_back({std::move(rule), std::move(subject), std::move(detail)});
    }

    void check_name(const std::string& name, const std::string& subject) {
        if (!is_valid_graphql_name(name)) {
            add("bad-name", subject, "\"" + name + "\" violates the GraphQL name grammar");
        }
    }

    void check_decl(const GqlTypeDecl& decl) {
        check_name(decl.name, decl.name);
        switch (decl.kind) {
        case GqlTypeKind::Object:
        case GqlTypeKind::Interface:
            if (decl.fields.empty()) {
                add("empty-object", decl.name, "objects must declare at least one field");
            }
            check_fields(decl.name, decl.fields);
            break;
        case GqlTypeKind::InputObject:
            if (decl.fields.empty()) {
                add("empty-input", decl.name, "input objects must declare at least one field");
            }
            for (const auto& f : decl.fields) {
                check_name(f.name, decl.name + "." + f.name);
                check_position(f.type, /*input=*/true, decl.name + "." + f.name);
            }
            break;
        case GqlTypeKind::Enum:
            if (decl.enum_values.empty()) {
                add("empty-enum", decl.name, "enums must declare at least one value");
            }
            for (const auto& v : decl.enum_values) {
                check_name(v, decl.name + "." + v);
            }
            break;
        case GqlTypeKind::Scalar:
            break;
        }
    }

    void check_fields(const std::string& owner, const std::vector<GqlField>& fields) {
        std::set<std::string> seen;
        for (const auto& f : fields) {
            const std::string subject = owner + "." + f.name;
            if (!seen.insert(f.name).second) {
                add("duplicate-name", subject, "field declared twice");
            }
            check_name(f.name, subject);
            check_position(f.type, /*input=*/false, subject);
            std::set<std::string> arg_names;
            for (const auto& a : f.args) {
                check_name(a.name, subject + "(" + a.name + ")");
                if (!arg_names.insert(a.name).second) {
                    add("duplicate-name", subject + "(" + a.name + ")",
                        "argument declared twice");
                }
                check_position(a.type, /*input=*/true, subject + "(" + a.name + ")");
            }
        }
    }

    void check_position(const GqlTypeExpr& expr, bool input, const std::string& subject) {
        const std::string& name = expr.named();
        if (is_builtin_gql_scalar(name)) {
            return;
        }
        auto it = schema_.types.find(name);
        if (it == schema_.types.end()) {
            add("undefined-reference", subject, "\"" + name + "\" is not declared");
            return;
        }
        const GqlTypeDecl& target = it->second;
        if (input && (target.kind == GqlTypeKind::Object ||
                      target.kind == GqlTypeKind::Interface)) {
            add("input-position-misuse", subject,
                "\"" + name + "\" is an output type used in an input position");
        }
        if (!input && target.kind == GqlTypeKind::InputObject) {
            add("output-position-misuse", subject,
                "\"" + name + "\" is an input object used in an output position");
        }
    }

    const SchemaDoc& schema_;
    std::vector<Violation> violations_;
};

} // namespace

std::vector<Violation> validate_schema(const SchemaDoc& schema) {
    return SchemaChecker(schema).run();
}

} // namespace restql
