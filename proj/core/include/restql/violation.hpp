#pragma once

#include <string>
#include <vector>

namespace restql {

/// One structural rule violation reported by a validator. Violations are
/// data, not failures: validators return the full list instead of throwing.
struct Violation {
    std::string rule;    // stable rule id, e.g. "empty-object"
    std::string subject; // offending name, e.g. "Marker" or "Article.wibble"
    std::string detail;  // human-readable elaboration

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::string to_string(const Violation& v) {
    std::string s = v.rule + ": " + v.subject;
    if (!v.detail.empty()) {
        s += " (" + v.detail + ")";
    }
    return s;
}

} // namespace restql
