#pragma once

#include <map>
#include <string>
#include <vector>

namespace restql::cli {

// Exit codes: 0 success, 1 ingestion/IO error, 2 strict-mode partial
// schema, 3 validation violations.
constexpr int kExitOk = 0;
constexpr int kExitIngest = 1;
constexpr int kExitPartial = 2;
constexpr int kExitInvalid = 3;

struct PipelineOptions {
    std::string plugin;
    std::string input;
    std::string mode; // empty = config file value or non-strict
    std::string config_path;
    std::vector<std::string> wrappers;
    std::vector<std::string> custom_scalars; // "qualified.Name=Scalar"
    int depth_limit = 0;                     // 0 = config/default
};

struct ConvertOptions {
    PipelineOptions pipeline;
    std::string out_path;
    std::string bindings_path;
    std::string diagnostics_path;
};

struct ServeOptionsCli {
    std::string schema_path;
    std::string bindings_path;
    std::string backend_url;
    std::string fixtures_path;
    int port = 8080;
    std::vector<std::string> pass_headers;
};

struct BenchOptionsCli {
    int chain = 5;
    int latency_ms = 50;
    int trials = 5;
};

int cmd_convert(const ConvertOptions& options);
int cmd_validate(const std::string& sdl_path);
int cmd_serve(const ServeOptionsCli& options);
int cmd_bench(const BenchOptionsCli& options);
int cmd_explain(const PipelineOptions& options);

// RESTQL_LOG: error | warn | info | debug (default warn)
void log_info(const std::string& message);
void log_error(const std::string& message);

} // namespace restql::cli
