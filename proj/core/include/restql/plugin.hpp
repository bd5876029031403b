#pragma once

#include "restql/api_surface.hpp"

#include <memory>
#include <string>
#include <vector>

namespace restql {

/// Ingestion capability: turns one input document into an ApiSurface.
/// Plugins are stateless; load() may be called concurrently.
class IngestionPlugin {
public:
    virtual ~IngestionPlugin() = default;

    virtual std::string name() const = 0;

    /// File extensions (without dot) this plugin accepts, for CLI hints.
    virtual std::vector<std::string> extensions() const = 0;

    /// Parses `document`, recording `source_locator` in the surface
    /// metadata. Throws IngestError on malformed input.
    virtual ApiSurface load(const std::string& document,
                            const std::string& source_locator) const = 0;
};

/// Name-keyed plugin collection, constructed once and read-only afterwards.
class PluginRegistry {
public:
    /// Throws ConfigError if the name is already registered.
    void register_plugin(std::shared_ptr<const IngestionPlugin> plugin);

    const IngestionPlugin* find(const std::string& name) const;

    /// Registered plugin names in sorted order.
    std::vector<std::string> names() const;

    /// Registry preloaded with the built-in "apiir" and "openapi" plugins.
    static PluginRegistry with_builtin_plugins();

private:
    std::vector<std::shared_ptr<const IngestionPlugin>> plugins_;
};

} // namespace restql
