#pragma once

#include "restql/api_surface.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace restql {

/// Why a heuristic mitigation was needed (or why strict mode skipped an
/// operation): the four mapping-cause classes.
enum class MappingCause { Missing, Invalid, Unknown, Conflict };

std::string to_string(MappingCause cause);

/// One step of the pipeline that touched the diagnosed subject.
struct StageFrame {
    std::string stage;   // "ingest", "map_type", "monomorphize", "detect_conflicts", ...
    std::string subject; // what was being processed at that stage

    friend bool operator==(const StageFrame&, const StageFrame&) = default;
};

/// Failure-diagnosis record. All five named fields are non-empty; `cause`
/// is present whenever one of the four mapping causes applies.
struct Diagnostic {
    std::string category;            // e.g. "NameConflict"
    std::string description;
    std::vector<StageFrame> trace;   // pipeline-stage trace, outermost first
    SourceLocation location;
    std::string resolution_strategy; // the non-strict action that would/did apply
    std::optional<MappingCause> cause;
    bool skip = false;               // true when strict mode dropped the subject

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Append-only diagnostic collector; report ordering happens at the end.
class DiagnosticSink {
public:
    /// Appends `d`, preserving order. Throws Error if any of the five
    /// required fields is empty.
    void emit(Diagnostic d);

    const std::vector<Diagnostic>& records() const { return records_; }
    std::vector<Diagnostic> take() { return std::move(records_); }

private:
    std::vector<Diagnostic> records_;
};

enum class ReportFormat { Json, Text };

/// JSON report: a stable-field-order array. Text report: aligned lines plus
/// a counts-by-cause footer. Records are ordered by (file, line, category).
std::string report(std::vector<Diagnostic> diagnostics, ReportFormat format);

nlohmann::json to_json(const Diagnostic& d);

/// "Conflict: 2, Invalid: 1, Unknown: 0, Missing: 0"
std::string cause_summary(const std::vector<Diagnostic>& diagnostics);

} // namespace restql
