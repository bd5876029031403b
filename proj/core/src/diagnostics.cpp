#include "restql/diagnostics.hpp"

#include "restql/errors.hpp"

#include <algorithm>
#include <sstream>

namespace restql {

std::string to_string(MappingCause cause) {
    switch (cause) {
    case MappingCause::Missing: return "Missing";
    case MappingCause::Invalid: return "Invalid";
    case MappingCause::Unknown: return "Unknown";
    case MappingCause::Conflict: return "Conflict";
    }
    return "Unknown";
}

void DiagnosticSink::emit(Diagnostic d) {
    if (d.category.empty() || d.description.empty() || d.trace.empty() ||
        d.location.file.empty() || d.resolution_strategy.empty()) {
        throw Error("diagnostic is missing one of its five required fields");
    }
    records_.push_back(std::move(d));
}

nlohmann::json to_json(const Diagnostic& d) {
    nlohmann::json j;
    j["category"] = d.category;
    if (d.cause) {
        j["cause"] = to_string(*d.cause);
    }
    j["description"] = d.description;
    j["location"] = nlohmann::json{{"file", d.location.file}, {"line", d.location.line}};
    j["resolutionStrategy"] = d.resolution_strategy;
    if (d.skip) {
        j["skipped"] = true;
    }
    j["trace"] = nlohmann::json::array();
    for (const auto& frame : d.trace) {
        j["trace"].push_back(nlohmann::json{{"stage", frame.stage}, {"subject", frame.subject}});
    }
    return j;
}

std::string cause_summary(const std::vector<Diagnostic>& diagnostics) {
    int conflict = 0, invalid = 0, unknown = 0, missing = 0;
    for (const auto& d : diagnostics) {
        if (!d.cause) {
            continue;
        }
        switch (*d.cause) {
        case MappingCause::Conflict: ++conflict; break;
        case MappingCause::Invalid: ++invalid; break;
        case MappingCause::Unknown: ++unknown; break;
        case MappingCause::Missing: ++missing; break;
        }
    }
    std::ostringstream out;
    out << "Conflict: " << conflict << ", Invalid: " << invalid << ", Unknown: " << unknown
        << ", Missing: " << missing;
    return out.str();
}

std::string report(std::vector<Diagnostic> diagnostics, ReportFormat format) {
    std::stable_sort(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& a, const Diagnostic& b) {
                         return std::tie(a.location.file, a.location.line, a.category) <
                                std::tie(b.location.file, b.location.line, b.category);
                     });
    if (format == ReportFormat::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& d : diagnostics) {
            arr.push_back(to_json(d));
        }
        return arr.dump(2) + "\n";
    }

    std::ostringstream out;
    if (diagnostics.empty()) {
        out << "0 diagnostics\n";
        return out.str();
    }
    for (const auto& d : diagnostics) {
        out << d.location.file << ":" << d.location.line << "  [" << d.category << "]";
        if (d.cause) {
            out << " (" << to_string(*d.cause) << ")";
        }
        out << "\n    " << d.description << "\n    resolution: " << d.resolution_strategy << "\n";
        out << "    trace:";
        for (const auto& frame : d.trace) {
            out << " " << frame.stage << "(" << frame.subject << ")";
        }
        out << "\n";
    }
    out << diagnostics.size() << (diagnostics.size() == 1 ? " diagnostic\n" : " diagnostics\n");
    out << cause_summary(diagnostics) << "\n";
    return out.str();
}

} // namespace restql
