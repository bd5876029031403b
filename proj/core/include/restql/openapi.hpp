#pragma once

#include "restql/api_surface.hpp"
#include "restql/plugin.hpp"

#include <json.hpp>

#include <map>
#include <string>

namespace restql {

enum class OpenApiFormat { Json, Yaml };

/// Resolution context for one OpenAPI-3 document: the component schema
/// index plus the operation-naming policy. External $refs are rejected.
struct OpenApiBinding {
    std::string source;
    std::map<std::string, nlohmann::json> schema_index; // components/schemas
    bool prefer_operation_id = true;
};

/// Ingests an OpenAPI 3.x document into an ApiSurface: one SourceOperation
/// per (path, method) pair, component schemas as type declarations, scalar
/// formats preserved as hints. YAML input is normalized to JSON first.
/// Throws IngestError for unsupported versions, unresolved refs, or allOf
/// reference cycles. oneOf/anyOf schemas become "unknown" declaration stubs
/// so the processor classifies them instead of widening silently.
ApiSurface parse_openapi(const std::string& document, OpenApiFormat format,
                         const std::string& source_locator = "",
                         bool prefer_operation_id = true);

/// Maps one resolved (ref-free) schema object to a SourceType. Throws
/// IngestError("unsupported construct ...") for oneOf/anyOf.
SourceType map_openapi_schema(const nlohmann::json& schema);

class OpenApiPlugin final : public IngestionPlugin {
public:
    std::string name() const override { return "openapi"; }
    std::vector<std::string> extensions() const override { return {"json", "yaml", "yml"}; }
    ApiSurface load(const std::string& document,
                    const std::string& source_locator) const override;
};

} // namespace restql
