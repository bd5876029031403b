#include "commands.hpp"

#include "restql/apiir.hpp"
#include "restql/bench.hpp"
#include "restql/diagnostics.hpp"
#include "restql/errors.hpp"
#include "restql/executor.hpp"
#include "restql/generator.hpp"
#include "restql/plugin.hpp"
#include "restql/processor.hpp"
#include "restql/server.hpp"
#include "restql/translator.hpp"

#include <json.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace restql::cli {

namespace {

using nlohmann::json;

int log_level() {
    static int level = [] {
        const char* env = std::getenv("RESTQL_LOG");
        if (env == nullptr) {
            return 1;
        }
        std::string v = env;
        if (v == "error") return 0;
        if (v == "warn") return 1;
        if (v == "info") return 2;
        if (v == "debug") return 3;
        return 1;
    }();
    return level;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError("cannot read file", path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IngestError("cannot write file", path);
    }
    out << content;
}

ProcessorConfig build_processor_config(const PipelineOptions& options) {
    ProcessorConfig config;
    if (!options.config_path.empty()) {
        json file = json::parse(read_file(options.config_path), nullptr, false);
        if (file.is_discarded() || !file.is_object()) {
            throw ConfigError("config file is not a JSON object: " + options.config_path);
        }
        for (const auto& [key, _] : file.items()) {
            if (key != "mode" && key != "wrappers" && key != "custom_scalars" &&
                key != "depth_limit") {
                throw ConfigError("unknown config key \"" + key + "\"");
            }
        }
        if (file.contains("mode")) {
            auto mode = processing_mode_from_string(file["mode"].get<std::string>());
            if (!mode) {
                throw ConfigError("config mode must be strict or non-strict");
            }
            config.mode = *mode;
        }
        if (file.contains("wrappers")) {
            config.wrapper_names = file["wrappers"].get<std::vector<std::string>>();
        }
        if (file.contains("custom_scalars")) {
            config.custom_scalar_map =
                file["custom_scalars"].get<std::map<std::string, std::string>>();
        }
        if (file.contains("depth_limit")) {
            config.recursion_depth_limit = file["depth_limit"].get<int>();
        }
    }
    if (!options.mode.empty()) {
        auto mode = processing_mode_from_string(options.mode);
        if (!mode) {
            throw ConfigError("--mode must be strict or non-strict");
        }
        config.mode = *mode;
    }
    for (const auto& w : options.wrappers) {
        config.wrapper_names.push_back(w);
    }
    for (const auto& entry : options.custom_scalars) {
        auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--custom-scalar expects qualified.Name=Scalar");
        }
        config.custom_scalar_map[entry.substr(0, eq)] = entry.substr(eq + 1);
    }
    if (options.depth_limit > 0) {
        config.recursion_depth_limit = options.depth_limit;
    }
    return config;
}

ApiSurface ingest(const PipelineOptions& options) {
    if (options.plugin.empty()) {
        throw ConfigError("--plugin is required");
    }
    PluginRegistry registry = PluginRegistry::with_builtin_plugins();
    const IngestionPlugin* plugin = registry.find(options.plugin);
    if (plugin == nullptr) {
        std::string names;
        for (const auto& n : registry.names()) {
            names += names.empty() ? n : ", " + n;
        }
        throw ConfigError("unknown plugin \"" + options.plugin + "\" (available: " + names +
                          ")");
    }
    return plugin->load(read_file(options.input), options.input);
}

} // namespace

void log_info(const std::string& message) {
    if (log_level() >= 2) {
        std::cerr << "restql: " << message << "\n";
    }
}

void log_error(const std::string& message) { std::cerr << "restql: error: " << message << "\n"; }

int cmd_convert(const ConvertOptions& options) {
    ProcessorConfig config;
    ProcessResult result;
    try {
        config = build_processor_config(options.pipeline);
        ApiSurface surface = ingest(options.pipeline);
        result = process(surface, config);
    } catch (const Error& e) {
        log_error(e.what());
        return kExitIngest;
    }

    SchemaDoc schema = translate(result.model);
    auto violations = validate_schema(schema);

    try {
        if (!options.out_path.empty()) {
            write_file(options.out_path, print_sdl(schema));
            log_info("wrote schema to " + options.out_path);
        }
        if (!options.bindings_path.empty()) {
            BindingManifest manifest = generate_bindings(result.model, schema);
            write_file(options.bindings_path, to_json(manifest).dump(2) + "\n");
            log_info("wrote bindings to " + options.bindings_path);
        }
        if (!options.diagnostics_path.empty()) {
            write_file(options.diagnostics_path,
                       report(result.diagnostics, ReportFormat::Json));
            log_info("wrote diagnostics to " + options.diagnostics_path);
        }
    } catch (const Error& e) {
        log_error(e.what());
        return kExitIngest;
    }

    if (!result.diagnostics.empty() && log_level() >= 2) {
        std::cerr << report(result.diagnostics, ReportFormat::Text);
    }
    if (!violations.empty()) {
        for (const auto& v : violations) {
            std::cerr << to_string(v) << "\n";
        }
        return kExitInvalid;
    }
    bool any_skip = false;
    for (const auto& d : result.diagnostics) {
        any_skip = any_skip || d.skip;
    }
    if (config.mode == ProcessingMode::Strict && any_skip) {
        return kExitPartial;
    }
    return kExitOk;
}

int cmd_validate(const std::string& sdl_path) {
    SchemaDoc schema;
    try {
        schema = parse_sdl(read_file(sdl_path));
    } catch (const Error& e) {
        log_error(e.what());
        return kExitIngest;
    }
    auto violations = validate_schema(schema);
    for (const auto& v : violations) {
        std::cout << to_string(v) << "\n";
    }
    return violations.empty() ? kExitOk : kExitInvalid;
}

namespace {

GatewayServer* g_server = nullptr;

void handle_signal(int) {
    if (g_server != nullptr) {
        g_server->request_stop();
    }
}

} // namespace

int cmd_serve(const ServeOptionsCli& options) {
    try {
        SchemaDoc schema = parse_sdl(read_file(options.schema_path));
        auto schema_violations = validate_schema(schema);
        if (!schema_violations.empty()) {
            throw ConfigError("schema failed validation: " +
                              to_string(schema_violations.front()));
        }
        json manifest_json = json::parse(read_file(options.bindings_path), nullptr, false);
        if (manifest_json.is_discarded()) {
            throw IngestError("bindings file is not valid JSON", options.bindings_path);
        }
        BindingManifest manifest = manifest_from_json(manifest_json);
        auto manifest_violations = validate_manifest(manifest, schema);
        if (!manifest_violations.empty()) {
            throw ConfigError("bindings failed validation: " +
                              to_string(manifest_violations.front()));
        }

        std::shared_ptr<const BackendAdapter> backend;
        if (!options.backend_url.empty() && !options.fixtures_path.empty()) {
            throw ConfigError("--backend and --fixtures are mutually exclusive");
        }
        if (!options.backend_url.empty()) {
            backend = std::make_shared<HttpBackend>(options.backend_url);
        } else if (!options.fixtures_path.empty()) {
            backend = std::make_shared<FixtureBackend>(
                load_fixtures(read_file(options.fixtures_path)));
        } else {
            throw ConfigError("one of --backend or --fixtures is required");
        }

        ServeOptions serve_options;
        serve_options.port = options.port;
        serve_options.passthrough_headers = options.pass_headers;
        GatewayServer server(std::move(schema), std::move(manifest), std::move(backend),
                             serve_options);
        g_server = &server;
        std::signal(SIGINT, handle_signal);
        std::signal(SIGTERM, handle_signal);
        std::cerr << "restql: serving /graphql on port " << options.port << "\n";
        server.run();
        g_server = nullptr;
        return kExitOk;
    } catch (const Error& e) {
        log_error(e.what());
        return kExitIngest;
    }
}

int cmd_bench(const BenchOptionsCli& options) {
    try {
        BenchConfig config;
        config.chain_length = options.chain;
        config.latency_ms = options.latency_ms;
        config.trials = options.trials;
        BenchReport report = run_bench(config);
        std::cout << format_bench_report(report);
        if (!report.rows.empty()) {
            const BenchRow& last = report.rows.back();
            std::cout << "ratio at chain length " << last.chain_length << ": "
                      << last.ratio << "x\n";
        }
        return kExitOk;
    } catch (const Error& e) {
        log_error(e.what());
        return kExitIngest;
    }
}

int cmd_explain(const PipelineOptions& options) {
    try {
        ProcessorConfig config = build_processor_config(options);
        ApiSurface surface = ingest(options);
        ProcessResult result = process(surface, config);
        std::cout << to_canonical_json(result.model) << "\n";
        if (!result.diagnostics.empty() && log_level() >= 2) {
            std::cerr << report(result.diagnostics, ReportFormat::Text);
        }
        return kExitOk;
    } catch (const Error& e) {
        log_error(e.what());
        return kExitIngest;
    }
}

} // namespace restql::cli
