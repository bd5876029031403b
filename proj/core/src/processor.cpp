#include "restql/processor.hpp"

#include "restql/naming.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace restql {

std::string to_string(ProcessingMode mode) {
    return mode == ProcessingMode::Strict ? "strict" : "non-strict";
}

std::optional<ProcessingMode> processing_mode_from_string(const std::string& s) {
    if (s == "strict") return ProcessingMode::Strict;
    if (s == "non-strict" || s == "nonstrict") return ProcessingMode::NonStrict;
    return std::nullopt;
}

Rws classify_operation(HttpMethod method) {
    return method == HttpMethod::Get ? Rws::Read : Rws::Write;
}

std::optional<ScalarKind> map_primitive(const std::string& name,
                                        const std::optional<std::string>& format_hint) {
    std::string n = name;
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    const std::string hint = format_hint.value_or("");

    if (n == "int" || n == "int32") {
        return ScalarKind::builtin(BuiltinScalar::Int);
    }
    if (n == "integer") {
        return hint == "int64" ? ScalarKind::extended(ExtendedScalar::Long)
                               : ScalarKind::builtin(BuiltinScalar::Int);
    }
    if (n == "long" || n == "int64") {
        return ScalarKind::extended(ExtendedScalar::Long);
    }
    if (n == "float") {
        return ScalarKind::builtin(BuiltinScalar::Float);
    }
    if (n == "double") {
        return ScalarKind::extended(ExtendedScalar::Double);
    }
    if (n == "number") {
        return hint == "double" ? ScalarKind::extended(ExtendedScalar::Double)
                                : ScalarKind::builtin(BuiltinScalar::Float);
    }
    if (n == "string") {
        if (hint == "date-time") return ScalarKind::extended(ExtendedScalar::DateTime);
        if (hint == "date") return ScalarKind::extended(ExtendedScalar::Date);
        if (hint == "time") return ScalarKind::extended(ExtendedScalar::Time);
        return ScalarKind::builtin(BuiltinScalar::String);
    }
    if (n == "boolean" || n == "bool") {
        return ScalarKind::builtin(BuiltinScalar::Boolean);
    }
    if (n == "id") {
        return ScalarKind::builtin(BuiltinScalar::Id);
    }
    if (n == "char" || n == "character") {
        return ScalarKind::extended(ExtendedScalar::Char);
    }
    if (n == "byte") {
        return ScalarKind::extended(ExtendedScalar::Byte);
    }
    if (n == "short") {
        return ScalarKind::extended(ExtendedScalar::Short);
    }
    if (n == "biginteger" || n == "bigint") {
        return ScalarKind::extended(ExtendedScalar::BigInteger);
    }
    if (n == "bigdecimal" || n == "decimal") {
        return ScalarKind::extended(ExtendedScalar::BigDecimal);
    }
    if (n == "datetime") {
        return ScalarKind::extended(ExtendedScalar::DateTime);
    }
    if (n == "date") {
        return ScalarKind::extended(ExtendedScalar::Date);
    }
    if (n == "time") {
        return ScalarKind::extended(ExtendedScalar::Time);
    }
    return std::nullopt;
}

std::string mitigation_strategy(MappingCause cause, const std::string& subject,
                                const std::string& rename_hint) {
    switch (cause) {
    case MappingCause::Conflict:
        return rename_hint.empty()
                   ? "rename " + subject + " using its fully-qualified name or signature"
                   : "rename " + subject + " to " + rename_hint;
    case MappingCause::Invalid:
        return subject.find("field") != std::string::npos || rename_hint == "empty-object"
                   ? "synthesize a nullable _empty: Boolean field on " + subject
                   : "substitute the opaque Unmapped scalar for " + subject;
    case MappingCause::Unknown:
        return "substitute the opaque Unmapped scalar for " + subject;
    case MappingCause::Missing:
        return "substitute the opaque Unmapped scalar for " + subject +
               " (declaration is missing from the input)";
    }
    return "substitute the opaque Unmapped scalar for " + subject;
}

// ---------------------------------------------------------------------------
// Conflict detection
// ---------------------------------------------------------------------------

std::vector<ConflictGroup> detect_conflicts(const std::vector<NameCandidate>& candidates) {
    // (candidate name, root) -> distinct source identities
    std::map<std::pair<std::string, std::string>, std::set<std::string>> type_groups;
    std::map<std::pair<std::string, std::string>, std::set<std::string>> op_groups;
    for (const auto& c : candidates) {
        if (c.is_operation) {
            const std::string root = c.rws ? to_string(*c.rws) : "";
            op_groups[{c.candidate, root}].insert(c.source);
        } else {
            type_groups[{c.candidate, ""}].insert(c.source);
        }
    }

    std::vector<ConflictGroup> groups;
    for (const auto& [key, members] : type_groups) {
        const std::string& name = key.first;
        if (name == "Query" || name == "Mutation") {
            ConflictGroup g;
            g.candidate = name;
            g.kind = "reserved-root";
            g.members.assign(members.begin(), members.end());
            groups.push_back(std::move(g));
            continue;
        }
        if (members.size() >= 2) {
            ConflictGroup g;
            g.candidate = name;
            g.kind = "type-conflict";
            g.members.assign(members.begin(), members.end());
            groups.push_back(std::move(g));
        }
    }
    for (const auto& [key, members] : op_groups) {
        if (members.size() >= 2) {
            ConflictGroup g;
            g.candidate = key.first;
            g.kind = "operation-overload";
            g.members.assign(members.begin(), members.end());
            groups.push_back(std::move(g));
        }
    }
    return groups;
}

// ---------------------------------------------------------------------------
// Pipeline
// ---------------------------------------------------------------------------

namespace {

constexpr const char* kUnmappedScalar = "Unmapped";

/// Substitutes generic type parameters by their (closed) arguments.
SourceType substitute(const SourceType& t, const std::map<std::string, SourceType>& env) {
    if (env.empty()) {
        return t;
    }
    if (const auto* named = std::get_if<SourceNamed>(&t.node)) {
        if (named->type_args.empty()) {
            auto it = env.find(named->qualified_name);
            if (it != env.end()) {
                return it->second;
            }
            return t;
        }
        SourceNamed out;
        out.qualified_name = named->qualified_name;
        for (const auto& arg : named->type_args) {
            out.type_args.push_back(substitute(arg, env));
        }
        return {std::move(out)};
    }
    if (const auto* list = std::get_if<SourceList>(&t.node)) {
        return src_list(substitute(*list->component, env));
    }
    if (const auto* map = std::get_if<SourceMap>(&t.node)) {
        return src_map(substitute(*map->key, env), substitute(*map->value, env));
    }
    if (const auto* marker = std::get_if<SourceNullableMarker>(&t.node)) {
        return src_required(substitute(*marker->inner, env), marker->required);
    }
    return t;
}

struct CauseRec {
    MappingCause cause = MappingCause::Unknown;
    std::string subject;
    std::string detail;
    std::string stage; // pipeline stage where the cause was found
};

struct ReachedType {
    std::string qualified; // base qualified name
    std::vector<SourceType> args;
    DeclKind kind = DeclKind::Object;
    bool generic = false;
};

struct OpRecord {
    const SourceService* service = nullptr;
    const SourceOperation* op = nullptr;
    Rws rws = Rws::Read;
    std::string source_id;
    std::string candidate;            // normalized GraphQL candidate name
    std::vector<std::string> reach;   // reached type keys, DFS order
    std::vector<CauseRec> own_causes; // causes not attached to a named type
    bool skipped = false;
    std::string final_name;
};

class Pipeline {
public:
    Pipeline(const ApiSurface& surface, const ProcessorConfig& config)
        : surface_(surface), config_(config) {
        input_location_.file =
            surface_.metadata.source.empty() ? "<input>" : surface_.metadata.source;
        input_location_.line = 0;
    }

    ProcessResult run() {
        check_config();
        collect_operations();
        analyze_reachability();
        assign_names();
        if (config_.mode == ProcessingMode::Strict) {
            select_skips();
        }
        build_model();
        return {std::move(model_), sink_.take()};
    }

private:
    // -- configuration ------------------------------------------------------

    void check_config() {
        std::set<std::string> wrappers(config_.wrapper_names.begin(),
                                       config_.wrapper_names.end());
        if (wrappers.size() != config_.wrapper_names.size()) {
            throw ConfigError("wrapper names must be distinct");
        }
        if (config_.recursion_depth_limit < 2) {
            throw ConfigError("recursion depth limit must be at least 2");
        }
        for (const auto& [qname, scalar] : config_.custom_scalar_map) {
            if (is_builtin_scalar_name(scalar) || is_extended_scalar_name(scalar)) {
                throw ConfigError("custom scalar \"" + scalar +
                                  "\" collides with a built-in or extended scalar");
            }
            if (!is_valid_graphql_name(scalar)) {
                throw ConfigError("custom scalar \"" + scalar +
                                  "\" is not a valid GraphQL name");
            }
        }
    }

    bool is_wrapper(const std::string& qualified) const {
        return std::find(config_.wrapper_names.begin(), config_.wrapper_names.end(),
                         qualified) != config_.wrapper_names.end();
    }

    // -- phase 1: operations -------------------------------------------------

    void collect_operations() {
        for (const auto& service : surface_.services) {
            for (const auto& op : service.operations) {
                OpRecord rec;
                rec.service = &service;
                rec.op = &op;
                rec.rws = classify_operation(op.http_method);
                std::string sig;
                for (const auto& p : op.params) {
                    if (!sig.empty()) {
                        sig += ",";
                    }
                    sig += source_type_key(p.type);
                }
                rec.source_id = service.namespace_name + "." + op.name + "(" + sig + ")";
                rec.candidate = normalize_identifier(op.name);
                ops_.push_back(std::move(rec));
            }
        }
    }

    // -- phase 2: reachability and causes ------------------------------------

    static std::string instantiation_key(const std::string& qualified,
                                         const std::vector<SourceType>& args) {
        if (args.empty()) {
            return qualified;
        }
        std::string key = qualified + "<";
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i > 0) {
                key += ",";
            }
            key += source_type_key(args[i]);
        }
        return key + ">";
    }

    void analyze_reachability() {
        for (auto& rec : ops_) {
            std::set<std::string> visited;
            for (const auto& p : rec.op->params) {
                if (param_is_interface(p.type)) {
                    rec.own_causes.push_back(
                        {MappingCause::Invalid, source_type_key(p.type),
                         "interfaces cannot appear in input positions", "map_type"});
                }
                analyze(p.type, 0, rec, visited);
            }
            analyze(rec.op->return_type, 0, rec, visited);
        }
    }

    /// True when a parameter type resolves (through markers and wrappers)
    /// to an interface declaration.
    bool param_is_interface(const SourceType& t) const {
        const SourceType* cur = &strip_markers(t);
        while (true) {
            const auto* named = std::get_if<SourceNamed>(&cur->node);
            if (named == nullptr) {
                return false;
            }
            if (is_wrapper(named->qualified_name) && named->type_args.size() == 1) {
                cur = &strip_markers(named->type_args[0]);
                continue;
            }
            if (config_.custom_scalar_map.count(named->qualified_name) > 0) {
                return false;
            }
            auto it = surface_.type_decls.find(named->qualified_name);
            return it != surface_.type_decls.end() &&
                   it->second.kind == DeclKind::Interface;
        }
    }

    void add_type_cause(const std::string& key, CauseRec cause) {
        type_causes_.emplace(key, std::move(cause)); // first cause wins
    }

    void analyze(const SourceType& t, int depth, OpRecord& rec,
                 std::set<std::string>& visited) {
        if (depth >= config_.recursion_depth_limit) {
            rec.own_causes.push_back({MappingCause::Invalid, source_type_key(t),
                                      "recursion depth limit exceeded", "map_type"});
            return;
        }
        const SourceType& s = strip_markers(t);
        if (const auto* p = std::get_if<SourcePrimitive>(&s.node)) {
            if (!map_primitive(p->name, p->format_hint)) {
                rec.own_causes.push_back({MappingCause::Unknown, "primitive " + p->name,
                                          "no scalar mapping for this primitive",
                                          "map_type"});
            }
            return;
        }
        if (const auto* l = std::get_if<SourceList>(&s.node)) {
            analyze(*l->component, depth + 1, rec, visited);
            return;
        }
        if (const auto* m = std::get_if<SourceMap>(&s.node)) {
            if (!source_map_key_ok(*m->key)) {
                rec.own_causes.push_back({MappingCause::Invalid, source_type_key(s),
                                          "map keys must be scalar or enum kinds",
                                          "map_type"});
            }
            analyze(*m->key, depth + 1, rec, visited);
            analyze(*m->value, depth + 1, rec, visited);
            return;
        }
        const auto* named = std::get_if<SourceNamed>(&s.node);
        if (named == nullptr) {
            return; // void
        }
        // Configured wrappers are transparent.
        if (is_wrapper(named->qualified_name)) {
            if (named->type_args.empty()) {
                rec.own_causes.push_back({MappingCause::Invalid, named->qualified_name,
                                          "configured wrapper appears without a type argument",
                                          "unwrap_wrapper"});
                return;
            }
            if (named->type_args.size() == 1) {
                analyze(named->type_args[0], depth, rec, visited);
                return;
            }
        }
        if (config_.custom_scalar_map.count(named->qualified_name) > 0) {
            return;
        }
        const std::string key = instantiation_key(named->qualified_name, named->type_args);
        const bool first_visit = visited.insert(key).second;
        if (!first_visit) {
            return;
        }
        rec.reach.push_back(key);

        auto decl_it = surface_.type_decls.find(named->qualified_name);
        if (decl_it == surface_.type_decls.end()) {
            reached_.emplace(key, ReachedType{named->qualified_name, named->type_args,
                                              DeclKind::Unknown, false});
            add_type_cause(key, {MappingCause::Missing, named->qualified_name,
                                 "no declaration for this named type", "map_type"});
            return;
        }
        const TypeDecl& decl = decl_it->second;
        ReachedType info{named->qualified_name, named->type_args, decl.kind,
                         !named->type_args.empty()};
        reached_.emplace(key, std::move(info));

        switch (decl.kind) {
        case DeclKind::Unknown:
            add_type_cause(key, {MappingCause::Unknown, named->qualified_name,
                                 "declaration exists but carries no mappable definition",
                                 "map_type"});
            return;
        case DeclKind::Enum:
            return;
        case DeclKind::Interface:
            for (const auto& op : decl.operations) {
                if (op.parameterized) {
                    add_type_cause(key, {MappingCause::Unknown,
                                         named->qualified_name + "." + op.name,
                                         "parameterized interface methods are not mappable",
                                         "map_type"});
                }
                analyze(op.return_type, depth + 1, rec, visited);
            }
            return;
        case DeclKind::Object:
            break;
        }

        if (decl.type_params.size() != named->type_args.size()) {
            add_type_cause(key, {MappingCause::Invalid, key,
                                 "generic arity mismatch: expected " +
                                     std::to_string(decl.type_params.size()) + " arguments",
                                 "monomorphize"});
            return;
        }
        std::map<std::string, SourceType> env;
        for (std::size_t i = 0; i < decl.type_params.size(); ++i) {
            env[decl.type_params[i]] = named->type_args[i];
        }
        bool any_field = false;
        for (const auto& f : decl.fields) {
            if (f.transient) {
                continue;
            }
            any_field = true;
            analyze(substitute(f.type, env), depth + 1, rec, visited);
        }
        if (!any_field) {
            add_type_cause(key, {MappingCause::Invalid, named->qualified_name,
                                 "object type declares no fields", "map_type"});
        }
    }

    bool source_map_key_ok(const SourceType& key) const {
        const SourceType& k = strip_markers(key);
        if (const auto* p = std::get_if<SourcePrimitive>(&k.node)) {
            return map_primitive(p->name, p->format_hint).has_value();
        }
        if (const auto* named = std::get_if<SourceNamed>(&k.node)) {
            if (config_.custom_scalar_map.count(named->qualified_name) > 0) {
                return true;
            }
            auto it = surface_.type_decls.find(named->qualified_name);
            return it != surface_.type_decls.end() && it->second.kind == DeclKind::Enum;
        }
        return false;
    }

    // -- phase 3: conflicts and naming ---------------------------------------

    void assign_names() {
        std::vector<NameCandidate> candidates;
        std::set<std::pair<std::string, std::string>> seen;
        for (const auto& [key, info] : reached_) {
            if (info.generic) {
                // Bases of generic instantiations compete for their simple
                // name among themselves; the winner keeps the short fragment.
                if (seen.insert({"base:" + info.qualified, ""}).second) {
                    candidates.push_back(
                        {normalize_identifier(simple_name(info.qualified)),
                         "base:" + info.qualified, false, std::nullopt});
                }
                continue;
            }
            candidates.push_back({normalize_identifier(simple_name(info.qualified)), key,
                                  false, std::nullopt});
        }
        for (const auto& rec : ops_) {
            candidates.push_back({rec.candidate, rec.source_id, true, rec.rws});
        }
        conflict_groups_ = detect_conflicts(candidates);

        for (const auto& group : conflict_groups_) {
            if (group.kind == "operation-overload") {
                for (const auto& member : group.members) {
                    overloaded_ops_.insert(member);
                }
                continue;
            }
            for (const auto& member : group.members) {
                if (member.rfind("base:", 0) == 0) {
                    const std::string qualified = member.substr(5);
                    base_fragment_[qualified] = normalize_identifier(qualified);
                    continue;
                }
                std::string mangled = normalize_identifier(reached_.at(member).qualified);
                if (group.kind == "reserved-root" && mangled == group.candidate) {
                    mangled += "Type";
                }
                conflict_renames_[member] = mangled;
            }
        }

        // Final names, sorted for determinism; instantiation names resolve
        // their argument fragments recursively.
        for (const auto& [key, info] : reached_) {
            final_names_[key] = compute_final_name(key, info);
        }
        // Residual collisions get deterministic numeric suffixes and count
        // as conflicts.
        std::map<std::string, std::string> by_name; // name -> first key
        for (auto& [key, name] : final_names_) {
            if (by_name.count(name) == 0) {
                by_name[name] = key;
                continue;
            }
            int n = 2;
            std::string fresh = name + "_" + std::to_string(n);
            while (by_name.count(fresh) > 0) {
                fresh = name + "_" + std::to_string(++n);
            }
            by_name[fresh] = key;
            conflict_renames_[key] = fresh;
            name = fresh;
        }
    }

    std::string compute_final_name(const std::string& key, const ReachedType& info) {
        if (auto it = conflict_renames_.find(key); it != conflict_renames_.end()) {
            return it->second;
        }
        if (!info.generic) {
            return normalize_identifier(simple_name(info.qualified));
        }
        std::string base;
        if (auto it = base_fragment_.find(info.qualified); it != base_fragment_.end()) {
            base = it->second;
        } else {
            base = normalize_identifier(simple_name(info.qualified));
        }
        std::string name = base + "Of";
        for (const auto& arg : info.args) {
            name += source_fragment(arg);
        }
        return normalize_identifier(name);
    }

    /// Name contribution of a closed source type inside a composed name.
    std::string source_fragment(const SourceType& t) {
        const SourceType& s = strip_markers(t);
        if (const auto* p = std::get_if<SourcePrimitive>(&s.node)) {
            auto scalar = map_primitive(p->name, p->format_hint);
            return scalar ? to_string(*scalar) : capitalize(p->name);
        }
        if (s.is<SourceVoid>()) {
            return "Void";
        }
        if (const auto* l = std::get_if<SourceList>(&s.node)) {
            return "ListOf" + source_fragment(*l->component);
        }
        if (const auto* m = std::get_if<SourceMap>(&s.node)) {
            return "ListOf" + source_fragment(*m->key) + source_fragment(*m->value) + "Entry";
        }
        const auto& named = s.as<SourceNamed>();
        if (is_wrapper(named.qualified_name) && named.type_args.size() == 1) {
            return source_fragment(named.type_args[0]);
        }
        if (auto custom = config_.custom_scalar_map.find(named.qualified_name);
            custom != config_.custom_scalar_map.end()) {
            return custom->second;
        }
        const std::string key = instantiation_key(named.qualified_name, named.type_args);
        if (auto it = final_names_.find(key); it != final_names_.end()) {
            return it->second;
        }
        if (auto it = reached_.find(key); it != reached_.end()) {
            final_names_[key] = compute_final_name(key, it->second);
            return final_names_[key];
        }
        return normalize_identifier(simple_name(named.qualified_name));
    }

    // -- phase 4: strict-mode skips ------------------------------------------

    void select_skips() {
        std::set<std::string> poisoned;
        for (const auto& [key, cause] : type_causes_) {
            poisoned.insert(key);
        }
        for (const auto& [key, rename] : conflict_renames_) {
            poisoned.insert(key);
        }
        for (auto& rec : ops_) {
            std::optional<CauseRec> primary;
            std::string category;
            if (overloaded_ops_.count(rec.source_id) > 0) {
                primary = CauseRec{MappingCause::Conflict, rec.source_id,
                                   "operation name collides within its root",
                                   "detect_conflicts"};
                category = "NameConflict";
            } else if (!rec.own_causes.empty()) {
                primary = rec.own_causes.front();
                category = category_for(primary->cause);
            } else {
                for (const auto& key : rec.reach) {
                    if (poisoned.count(key) == 0) {
                        continue;
                    }
                    if (auto it = type_causes_.find(key); it != type_causes_.end()) {
                        primary = it->second;
                        category = category_for(primary->cause);
                    } else {
                        primary = CauseRec{MappingCause::Conflict, key,
                                           "type name collides across namespaces",
                                           "detect_conflicts"};
                        category = "NameConflict";
                    }
                    break;
                }
            }
            if (!primary) {
                continue;
            }
            rec.skipped = true;
            std::string hint = rename_hint_for(rec, *primary);
            Diagnostic d;
            d.category = category;
            d.cause = primary->cause;
            d.description = "operation " + rec.source_id + " skipped: " + primary->detail +
                            " (" + primary->subject + ")";
            d.trace = {{"ingest", rec.source_id}, {primary->stage, primary->subject}};
            d.location = rec.op->location;
            d.resolution_strategy = mitigation_strategy(primary->cause, primary->subject, hint);
            d.skip = true;
            sink_.emit(std::move(d));
        }
    }

    static std::string category_for(MappingCause cause) {
        switch (cause) {
        case MappingCause::Conflict: return "NameConflict";
        case MappingCause::Invalid: return "InvalidConstruct";
        case MappingCause::Unknown: return "UnknownType";
        case MappingCause::Missing: return "MissingDeclaration";
        }
        return "UnknownType";
    }

    std::string rename_hint_for(const OpRecord& rec, const CauseRec& cause) {
        if (cause.cause != MappingCause::Conflict) {
            return "";
        }
        if (overloaded_ops_.count(rec.source_id) > 0) {
            return overload_rename(rec);
        }
        if (auto it = conflict_renames_.find(cause.subject); it != conflict_renames_.end()) {
            return it->second;
        }
        return "";
    }

    std::string overload_rename(const OpRecord& rec) const {
        std::vector<std::string> arg_names;
        for (const auto& p : rec.op->params) {
            arg_names.push_back(source_simple_fragment(p.type));
        }
        return overload_name(normalize_identifier(rec.op->name), arg_names,
                             source_simple_fragment(rec.op->return_type));
    }

    /// Capitalized simple source-type name, the paper's overload-rename
    /// vocabulary ("Integer", "String", "User").
    std::string source_simple_fragment(const SourceType& t) const {
        const SourceType& s = strip_markers(t);
        if (const auto* p = std::get_if<SourcePrimitive>(&s.node)) {
            return capitalize(p->name);
        }
        if (s.is<SourceVoid>()) {
            return "Void";
        }
        if (const auto* l = std::get_if<SourceList>(&s.node)) {
            return "ListOf" + source_simple_fragment(*l->component);
        }
        if (const auto* m = std::get_if<SourceMap>(&s.node)) {
            return "MapOf" + source_simple_fragment(*m->key) + source_simple_fragment(*m->value);
        }
        const auto& named = s.as<SourceNamed>();
        std::string base = capitalize(simple_name(named.qualified_name));
        for (const auto& arg : named.type_args) {
            base += "Of" + source_simple_fragment(arg);
        }
        return base;
    }

    // -- phase 5: model building ---------------------------------------------

    void build_model() {
        assign_operation_names();
        for (auto& rec : ops_) {
            if (rec.skipped) {
                continue;
            }
            build_operation(rec);
        }
        emit_naming_records();
    }

    // Naming records cover only types that actually materialized; strict
    // mode leaves skipped operations' types out of the model entirely.
    void emit_naming_records() {
        const bool non_strict = config_.mode == ProcessingMode::NonStrict;
        for (const auto& [key, info] : reached_) {
            if (building_.count(key) == 0) {
                continue;
            }
            const std::string& final_name = final_names_.at(key);
            if (info.generic) {
                model_.rename_log.push_back({key, final_name, "Generic"});
                Diagnostic d;
                d.category = "GenericInstantiation";
                d.description = "materialized static type " + final_name +
                                " for generic instantiation " + key;
                d.trace = {{"monomorphize", key}};
                d.location = input_location_;
                d.resolution_strategy =
                    "each unique instantiation becomes a distinct GraphQL type";
                sink_.emit(std::move(d));
                continue;
            }
            auto renamed = conflict_renames_.find(key);
            if (renamed == conflict_renames_.end() || !non_strict) {
                continue;
            }
            model_.rename_log.push_back({info.qualified, renamed->second, "Conflict"});
            Diagnostic d;
            d.category = "NameConflict";
            d.cause = MappingCause::Conflict;
            d.description = "type " + info.qualified +
                            " collides with another type of the same simple name";
            d.trace = {{"detect_conflicts", info.qualified}};
            d.location = input_location_;
            d.resolution_strategy =
                mitigation_strategy(MappingCause::Conflict, info.qualified, renamed->second);
            sink_.emit(std::move(d));
        }
    }

    void assign_operation_names() {
        const bool non_strict = config_.mode == ProcessingMode::NonStrict;
        for (auto& rec : ops_) {
            if (rec.skipped) {
                continue;
            }
            rec.final_name = rec.candidate;
            if (non_strict && overloaded_ops_.count(rec.source_id) > 0) {
                rec.final_name = overload_rename(rec);
                record_operation_rename(rec);
            }
        }
        // Residual collisions (identical signatures across namespaces) fold
        // in the namespace, then a numeric suffix as a last resort.
        std::set<std::pair<std::string, std::string>> used;
        for (auto& rec : ops_) {
            if (rec.skipped) {
                continue;
            }
            const std::string root = to_string(rec.rws);
            if (used.insert({root, rec.final_name}).second) {
                continue;
            }
            std::string with_ns =
                normalize_identifier(rec.service->namespace_name + "." + rec.op->name);
            if (!used.insert({root, with_ns}).second) {
                int n = 2;
                while (!used.insert({root, with_ns + "_" + std::to_string(n)}).second) {
                    ++n;
                }
                with_ns += "_" + std::to_string(n);
            }
            rec.final_name = with_ns;
            record_operation_rename(rec);
        }
    }

    void record_operation_rename(const OpRecord& rec) {
        model_.rename_log.push_back({rec.source_id, rec.final_name, "Conflict"});
        Diagnostic d;
        d.category = "OperationOverload";
        d.cause = MappingCause::Conflict;
        d.description = "operation " + rec.source_id + " collides within its root";
        d.trace = {{"ingest", rec.source_id}, {"detect_conflicts", rec.op->name}};
        d.location = rec.op->location;
        d.resolution_strategy =
            mitigation_strategy(MappingCause::Conflict, rec.source_id, rec.final_name);
        sink_.emit(std::move(d));
    }

    void build_operation(OpRecord& rec) {
        OperationDef def;
        def.name = rec.final_name;
        def.source_id = rec.source_id;
        def.rws = rec.rws;
        def.backend.method = rec.op->http_method;
        def.backend.path_template = rec.op->path;
        current_op_ = &rec;
        for (const auto& p : rec.op->params) {
            ParamDef param;
            param.name = normalize_identifier(p.name);
            param.type = param_is_interface(p.type)
                             ? mitigate_node(MappingCause::Invalid, source_type_key(p.type),
                                             "interfaces cannot appear in input positions",
                                             "map_type")
                             : build_expr(p.type, 0, "param " + rec.source_id + "." + p.name);
            param.required = p.required;
            def.params.push_back(std::move(param));
            def.backend.params.push_back({normalize_identifier(p.name), p.location, p.name});
        }
        def.output = build_expr(rec.op->return_type, 0, "output of " + rec.source_id);
        current_op_ = nullptr;
        model_.operations.push_back(std::move(def));
    }

    TypeDef mitigate_node(MappingCause cause, const std::string& subject,
                          const std::string& detail, const std::string& stage) {
        if (config_.mode == ProcessingMode::Strict) {
            // Strict mode pre-selects clean operations; reaching this point
            // is a pipeline bug or a standalone map_type call.
            throw MappingFailure(cause, subject, detail);
        }
        ensure_unmapped_scalar();
        if (mitigated_.insert(to_string(cause) + "|" + subject).second) {
            Diagnostic d;
            d.category = category_for(cause);
            d.cause = cause;
            d.description = detail + " (" + subject + ")";
            d.trace = {{"ingest", current_op_ ? current_op_->source_id : "<types>"},
                       {stage, subject}};
            d.location = current_op_ ? current_op_->op->location : input_location_;
            d.resolution_strategy = mitigation_strategy(cause, subject);
            sink_.emit(std::move(d));
        }
        return literal(ScalarKind::custom(kUnmappedScalar));
    }

    void ensure_unmapped_scalar() {
        model_.types.emplace(kUnmappedScalar, literal(ScalarKind::custom(kUnmappedScalar)));
    }

    TypeDef build_expr(const SourceType& t, int depth, const std::string& where) {
        if (depth >= config_.recursion_depth_limit) {
            return mitigate_node(MappingCause::Invalid, where,
                                 "recursion depth limit exceeded", "map_type");
        }
        if (const auto* marker = std::get_if<SourceNullableMarker>(&t.node)) {
            TypeDef inner = build_expr(*marker->inner, depth, where);
            if (marker->required && !inner.is<NonNullDef>() && !inner.is<VoidDef>()) {
                return non_null(std::move(inner));
            }
            return inner;
        }
        if (const auto* p = std::get_if<SourcePrimitive>(&t.node)) {
            auto scalar = map_primitive(p->name, p->format_hint);
            if (!scalar) {
                return mitigate_node(MappingCause::Unknown, "primitive " + p->name,
                                     "no scalar mapping for this primitive", "map_type");
            }
            return literal(*scalar);
        }
        if (t.is<SourceVoid>()) {
            return void_def();
        }
        if (const auto* l = std::get_if<SourceList>(&t.node)) {
            return list_of(build_expr(*l->component, depth + 1, where));
        }
        if (const auto* m = std::get_if<SourceMap>(&t.node)) {
            if (!source_map_key_ok(*m->key)) {
                return mitigate_node(MappingCause::Invalid, source_type_key(t),
                                     "map keys must be scalar or enum kinds", "map_type");
            }
            TypeDef key = build_expr(*m->key, depth + 1, where);
            TypeDef value = build_expr(*m->value, depth + 1, where);
            MapEntryDef entry{Box<TypeDef>(std::move(key)), Box<TypeDef>(std::move(value)), ""};
            entry.entry_name = register_entry(entry);
            return list_of(TypeDef{std::move(entry)});
        }
        const auto& named = t.as<SourceNamed>();
        if (is_wrapper(named.qualified_name)) {
            if (named.type_args.empty()) {
                return mitigate_node(MappingCause::Invalid, named.qualified_name,
                                     "configured wrapper appears without a type argument",
                                     "unwrap_wrapper");
            }
            if (named.type_args.size() == 1) {
                model_.wrapper_log.push_back({named.qualified_name, where,
                                              source_type_key(named.type_args[0])});
                return build_expr(named.type_args[0], depth, where);
            }
        }
        if (auto custom = config_.custom_scalar_map.find(named.qualified_name);
            custom != config_.custom_scalar_map.end()) {
            model_.types.emplace(custom->second, literal(ScalarKind::custom(custom->second)));
            return literal(ScalarKind::custom(custom->second));
        }

        const std::string key = instantiation_key(named.qualified_name, named.type_args);
        auto decl_it = surface_.type_decls.find(named.qualified_name);
        if (decl_it == surface_.type_decls.end()) {
            return mitigate_node(MappingCause::Missing, named.qualified_name,
                                 "no declaration for this named type", "map_type");
        }
        const TypeDecl& decl = decl_it->second;
        if (decl.kind == DeclKind::Unknown) {
            return mitigate_node(MappingCause::Unknown, named.qualified_name,
                                 "declaration exists but carries no mappable definition",
                                 "map_type");
        }
        if (decl.kind == DeclKind::Object &&
            decl.type_params.size() != named.type_args.size()) {
            return mitigate_node(MappingCause::Invalid, key,
                                 "generic arity mismatch: expected " +
                                     std::to_string(decl.type_params.size()) + " arguments",
                                 "monomorphize");
        }
        return type_ref(ensure_named(key, named, decl, depth));
    }

    std::string final_name_of(const std::string& key, const SourceNamed& named) {
        if (auto it = final_names_.find(key); it != final_names_.end()) {
            return it->second;
        }
        // Standalone map_type calls skip the analysis pass; derive on demand.
        ReachedType info{named.qualified_name, named.type_args, DeclKind::Object,
                         !named.type_args.empty()};
        std::string name = compute_final_name(key, info);
        final_names_[key] = name;
        return name;
    }

    std::string ensure_named(const std::string& key, const SourceNamed& named,
                             const TypeDecl& decl, int depth) {
        const std::string name = final_name_of(key, named);
        if (!building_.insert(key).second) {
            return name; // already built or in progress (cycle)
        }
        switch (decl.kind) {
        case DeclKind::Enum: {
            EnumDef def;
            def.name = name;
            std::set<std::string> used;
            for (const auto& v : decl.values) {
                std::string id = normalize_identifier(v);
                int n = 2;
                while (!used.insert(id).second) {
                    id = normalize_identifier(v) + "_" + std::to_string(n++);
                }
                def.values.push_back(id);
            }
            model_.types[name] = TypeDef{std::move(def)};
            return name;
        }
        case DeclKind::Interface: {
            InterfaceDef def;
            def.name = name;
            for (const auto& op : decl.operations) {
                FieldDef field;
                field.name = normalize_identifier(op.name);
                if (field.name != op.name) {
                    field.source_name = op.name;
                }
                if (op.parameterized) {
                    field.type = Box<TypeDef>(mitigate_node(
                        MappingCause::Unknown, named.qualified_name + "." + op.name,
                        "parameterized interface methods are not mappable", "map_type"));
                } else {
                    field.type = Box<TypeDef>(build_expr(op.return_type, depth + 1,
                                                         name + "." + op.name));
                }
                def.operations.push_back(std::move(field));
            }
            model_.types[name] = TypeDef{std::move(def)};
            return name;
        }
        case DeclKind::Object:
            break;
        default:
            break;
        }

        ObjectDef def;
        def.name = name;
        def.source_name = named.qualified_name;
        std::map<std::string, SourceType> env;
        for (std::size_t i = 0; i < decl.type_params.size(); ++i) {
            env[decl.type_params[i]] = named.type_args[i];
            def.type_args.push_back(build_expr(named.type_args[i], depth + 1, name));
        }
        for (const auto& f : decl.fields) {
            if (f.transient) {
                continue;
            }
            FieldDef field;
            field.name = normalize_identifier(f.name);
            if (field.name != f.name) {
                field.source_name = f.name;
            }
            field.type = Box<TypeDef>(
                build_expr(substitute(f.type, env), depth + 1, name + "." + field.name));
            field.nullable = !f.required;
            def.fields.push_back(std::move(field));
        }
        if (def.fields.empty()) {
            if (config_.mode == ProcessingMode::Strict) {
                building_.erase(key);
                throw MappingFailure(MappingCause::Invalid, named.qualified_name,
                                     "object type declares no fields");
            }
            FieldDef synthetic;
            synthetic.name = "_empty";
            synthetic.type = Box<TypeDef>(literal(BuiltinScalar::Boolean));
            synthetic.nullable = true;
            def.fields.push_back(std::move(synthetic));
            Diagnostic d;
            d.category = "EmptyObject";
            d.cause = MappingCause::Invalid;
            d.description = "object type " + named.qualified_name +
                            " declares no fields; GraphQL requires at least one";
            d.trace = {{"ingest", current_op_ ? current_op_->source_id : "<types>"},
                       {"map_type", named.qualified_name}};
            d.location = current_op_ ? current_op_->op->location : input_location_;
            d.resolution_strategy = "synthesize a nullable _empty: Boolean field on " +
                                    named.qualified_name;
            sink_.emit(std::move(d));
        }
        model_.types[name] = TypeDef{std::move(def)};
        return name;
    }

    /// Registers a map-entry declaration, sharing structurally identical
    /// entries and suffixing genuine name clashes.
    std::string register_entry(const MapEntryDef& entry) {
        std::string name = map_entry_name(*entry.key, *entry.value);
        int n = 2;
        while (true) {
            auto it = model_.types.find(name);
            if (it == model_.types.end()) {
                MapEntryDef decl = entry;
                decl.entry_name = name;
                model_.types[name] = TypeDef{std::move(decl)};
                return name;
            }
            if (const auto* existing = std::get_if<MapEntryDef>(&it->second.node)) {
                if (*existing->key == *entry.key && *existing->value == *entry.value) {
                    return name;
                }
            }
            name = map_entry_name(*entry.key, *entry.value) + "_" + std::to_string(n++);
        }
    }

    friend TypeDef restql::map_type(const SourceType&, const std::map<std::string, TypeDecl>&,
                                    const ProcessorConfig&, int,
                                    std::map<std::string, TypeDef>*);
    friend ObjectDef restql::monomorphize(const std::string&, const TypeDecl&,
                                          const std::vector<SourceType>&,
                                          const std::map<std::string, TypeDecl>&,
                                          const ProcessorConfig&);

    const ApiSurface& surface_;
    const ProcessorConfig& config_;
    SourceLocation input_location_;
    DefModel model_;
    DiagnosticSink sink_;

    std::vector<OpRecord> ops_;
    std::map<std::string, ReachedType> reached_;   // instantiation key -> info
    std::map<std::string, CauseRec> type_causes_;  // instantiation key -> first cause
    std::vector<ConflictGroup> conflict_groups_;
    std::map<std::string, std::string> conflict_renames_; // key -> final name
    std::map<std::string, std::string> base_fragment_;    // generic base -> mangled fragment
    std::map<std::string, std::string> final_names_;      // key -> final name
    std::set<std::string> overloaded_ops_;                // source ids
    std::set<std::string> building_;
    std::set<std::string> mitigated_;
    OpRecord* current_op_ = nullptr;
};

} // namespace

ProcessResult process(const ApiSurface& surface, const ProcessorConfig& config) {
    // Composite map keys classify as Invalid causes downstream; the other
    // surface invariants are ingestion-level contracts and hard-fail here.
    for (const auto& v : validate_surface(surface)) {
        if (v.rule != "composite-map-key") {
            throw Error("surface violates its invariants: " + to_string(v));
        }
    }
    return Pipeline(surface, config).run();
}

SourceType unwrap_wrapper(const SourceType& t, const ProcessorConfig& config) {
    const SourceType* cur = &t;
    while (true) {
        const auto* named = std::get_if<SourceNamed>(&cur->node);
        if (named == nullptr) {
            return *cur;
        }
        const bool configured =
            std::find(config.wrapper_names.begin(), config.wrapper_names.end(),
                      named->qualified_name) != config.wrapper_names.end();
        if (!configured) {
            return *cur;
        }
        if (named->type_args.empty()) {
            throw MappingFailure(MappingCause::Invalid, named->qualified_name,
                                 "configured wrapper appears without a type argument");
        }
        if (named->type_args.size() != 1) {
            return *cur;
        }
        cur = &named->type_args[0];
    }
}

TypeDef map_type(const SourceType& t, const std::map<std::string, TypeDecl>& decls,
                 const ProcessorConfig& config, int depth,
                 std::map<std::string, TypeDef>* pool) {
    ApiSurface surface;
    surface.type_decls = decls;
    ProcessorConfig strict = config;
    strict.mode = ProcessingMode::Strict;
    Pipeline pipeline(surface, strict);
    TypeDef result = pipeline.build_expr(t, depth, "map_type");
    if (pool != nullptr) {
        *pool = pipeline.model_.types;
    }
    // The spec-level contract returns the full definition when the mapped
    // type is a named one; process() itself links by reference.
    if (const auto* ref = std::get_if<TypeRef>(&result.node)) {
        if (auto it = pipeline.model_.types.find(ref->name); it != pipeline.model_.types.end()) {
            return it->second;
        }
    }
    return result;
}

ObjectDef monomorphize(const std::string& base_qualified_name, const TypeDecl& base,
                       const std::vector<SourceType>& args,
                       const std::map<std::string, TypeDecl>& decls,
                       const ProcessorConfig& config) {
    if (base.type_params.size() != args.size()) {
        throw MappingFailure(MappingCause::Invalid,
                             base_qualified_name,
                             "generic arity mismatch: expected " +
                                 std::to_string(base.type_params.size()) + " arguments");
    }
    auto with_base = decls;
    with_base[base_qualified_name] = base;
    TypeDef mapped = map_type(src_named(base_qualified_name, args), with_base, config);
    if (const auto* obj = std::get_if<ObjectDef>(&mapped.node)) {
        return *obj;
    }
    throw MappingFailure(MappingCause::Unknown, base_qualified_name,
                         "instantiation did not produce an object definition");
}

} // namespace restql
