#pragma once

#include "restql/api_surface.hpp"
#include "restql/plugin.hpp"

#include <json.hpp>

#include <string>

namespace restql {

/// Parses an API-IR interchange document (see docs/apiir-schema.json).
/// The schema is strict: unknown keys, a missing "apiirVersion": "1", or
/// invariant violations (duplicate body params, path params missing from the
/// template, composite map keys) raise IngestError with a JSON path.
ApiSurface load_apiir(const std::string& document);

/// Canonical re-serialization: sorted keys, defaults omitted, compact.
/// load_apiir(serialize_apiir(s).dump()) reproduces `s` exactly.
nlohmann::json serialize_apiir(const ApiSurface& surface);

/// The native interchange plugin standing in for source-AST ingestion.
class ApiIrPlugin final : public IngestionPlugin {
public:
    std::string name() const override { return "apiir"; }
    std::vector<std::string> extensions() const override { return {"apiir.json"}; }
    ApiSurface load(const std::string& document,
                    const std::string& source_locator) const override;
};

} // namespace restql
