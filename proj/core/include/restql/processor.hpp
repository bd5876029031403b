#pragma once

#include "restql/api_surface.hpp"
#include "restql/defmodel.hpp"
#include "restql/diagnostics.hpp"
#include "restql/errors.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace restql {

enum class ProcessingMode { Strict, NonStrict };

std::string to_string(ProcessingMode mode);
std::optional<ProcessingMode> processing_mode_from_string(const std::string& s);

/// Processing knobs. Wrapper names must be distinct; the recursion depth
/// limit guards anonymous nesting and must be at least 2.
struct ProcessorConfig {
    ProcessingMode mode = ProcessingMode::NonStrict;
    std::vector<std::string> wrapper_names;
    std::map<std::string, std::string> custom_scalar_map; // qualified name -> scalar identifier
    int recursion_depth_limit = 64;
};

struct ProcessResult {
    DefModel model;
    std::vector<Diagnostic> diagnostics;
};

/// Transforms an ApiSurface into a DefModel. In strict mode every source
/// operation either lands in the model or is skipped with a five-field
/// Diagnostic; in non-strict mode every operation lands in the model and
/// each applied heuristic is diagnosed with its mapping cause. Output is
/// deterministic for a given (surface, config) pair.
ProcessResult process(const ApiSurface& surface, const ProcessorConfig& config);

/// GET reads; POST/PUT/PATCH/DELETE write.
Rws classify_operation(HttpMethod method);

/// Scalar mapping for source primitives, format-aware: ("integer","int64")
/// becomes Long, ("number","double") Double, ("string","date-time")
/// DateTime. Returns nullopt for vocabulary the table does not know.
std::optional<ScalarKind> map_primitive(const std::string& name,
                                        const std::optional<std::string>& format_hint);

/// A single mapping step failed; carries the classified cause. Standalone
/// operations throw this; process() turns it into skips or mitigations.
class MappingFailure : public Error {
public:
    MappingFailure(MappingCause cause, std::string subject, std::string detail)
        : Error(to_string(cause) + ": " + subject + (detail.empty() ? "" : " - " + detail)),
          cause_(cause),
          subject_(std::move(subject)) {}

    MappingCause cause() const { return cause_; }
    const std::string& subject() const { return subject_; }

private:
    MappingCause cause_;
    std::string subject_;
};

/// Applies the configured wrapper rule to a fixed point: a named type whose
/// qualified name is configured and which carries exactly one type argument
/// collapses to that argument. Throws MappingFailure(Invalid) when a
/// configured wrapper appears with zero arguments.
SourceType unwrap_wrapper(const SourceType& t, const ProcessorConfig& config);

/// Maps one source type against a declaration index. Named types land in
/// `pool` (keyed by their assigned GraphQL names) and are returned by
/// reference; structural types map inline. Throws MappingFailure for
/// unknown/missing named types and depth overruns.
TypeDef map_type(const SourceType& t, const std::map<std::string, TypeDecl>& decls,
                 const ProcessorConfig& config, int depth = 0,
                 std::map<std::string, TypeDef>* pool = nullptr);

/// Instantiates a generic declaration with concrete arguments: every type
/// parameter occurrence in the fields is substituted and the result is a
/// distinct ObjectDef named "<Base>Of<Args...>". Throws MappingFailure on
/// arity mismatch or unresolved arguments.
ObjectDef monomorphize(const std::string& base_qualified_name, const TypeDecl& base,
                       const std::vector<SourceType>& args,
                       const std::map<std::string, TypeDecl>& decls,
                       const ProcessorConfig& config);

/// One name-candidate entering conflict detection.
struct NameCandidate {
    std::string candidate;      // unqualified GraphQL-candidate name
    std::string source;         // qualified source name or operation source id
    bool is_operation = false;
    std::optional<Rws> rws;     // operations only; conflicts are per root
};

struct ConflictGroup {
    std::string candidate;
    std::string kind; // "type-conflict" | "operation-overload" | "reserved-root"
    std::vector<std::string> members; // source identities, sorted

    friend bool operator==(const ConflictGroup&, const ConflictGroup&) = default;
};

/// Groups candidates whose GraphQL names collide: same-named types from
/// different namespaces, operation overloads per root, and types shadowing
/// the reserved Query/Mutation roots.
std::vector<ConflictGroup> detect_conflicts(const std::vector<NameCandidate>& candidates);

/// Human-readable description of the non-strict action for a cause; used as
/// the resolution strategy of diagnostics in both modes.
std::string mitigation_strategy(MappingCause cause, const std::string& subject,
                                const std::string& rename_hint = "");

} // namespace restql
