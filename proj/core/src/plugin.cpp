#include "restql/plugin.hpp"

#include "restql/apiir.hpp"
#include "restql/errors.hpp"
#include "restql/openapi.hpp"

#include <algorithm>

namespace restql {

void PluginRegistry::register_plugin(std::shared_ptr<const IngestionPlugin> plugin) {
    if (!plugin) {
        throw ConfigError("cannot register a null plugin");
    }
    const std::string name = plugin->name();
    if (find(name) != nullptr) {
        throw ConfigError("plugin \"" + name + "\" is already registered");
    }
    plugins_.push_back(std::move(plugin));
}

const IngestionPlugin* PluginRegistry::find(const std::string& name) const {
    for (const auto& p : plugins_) {
        if (p->name() == name) {
            return p.get();
        }
    }
    return nullptr;
}

std::vector<std::string> PluginRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(plugins_.size());
    for (const auto& p : plugins_) {
        out.push_back(p->name());
    }
    std::sort(out.begin(), out.end());
    return out;
}

PluginRegistry PluginRegistry::with_builtin_plugins() {
    PluginRegistry registry;
    registry.register_plugin(std::make_shared<ApiIrPlugin>());
    registry.register_plugin(std::make_shared<OpenApiPlugin>());
    return registry;
}

} // namespace restql
