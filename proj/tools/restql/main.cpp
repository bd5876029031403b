#include "commands.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    using namespace restql::cli;

    CLI::App app{"restql - REST-to-GraphQL conversion toolchain"};
    app.require_subcommand(1);

    auto add_pipeline_options = [](CLI::App* cmd, PipelineOptions& options) {
        cmd->add_option("--plugin", options.plugin, "Ingestion plugin (apiir, openapi)")
            ->required();
        cmd->add_option("--input", options.input, "Input document path")->required();
        cmd->add_option("--mode", options.mode, "Processing mode: strict or non-strict");
        cmd->add_option("--config", options.config_path,
                        "JSON config file (mode, wrappers, custom_scalars, depth_limit)");
        cmd->add_option("--wrapper", options.wrappers,
                        "Qualified wrapper type to unwrap (repeatable)");
        cmd->add_option("--custom-scalar", options.custom_scalars,
                        "Custom scalar mapping qualified.Name=Scalar (repeatable)");
        cmd->add_option("--depth-limit", options.depth_limit, "Recursion depth limit");
    };

    ConvertOptions convert_options;
    auto* convert = app.add_subcommand(
        "convert", "Convert an API description to a GraphQL schema and bindings");
    add_pipeline_options(convert, convert_options.pipeline);
    convert->add_option("--out", convert_options.out_path, "SDL output path")->required();
    convert->add_option("--bindings", convert_options.bindings_path,
                        "Binding manifest output path");
    convert->add_option("--diagnostics", convert_options.diagnostics_path,
                        "Diagnostics JSON output path");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Validate a GraphQL SDL file");
    validate->add_option("sdl", validate_path, "SDL file path")->required();

    ServeOptionsCli serve_options;
    auto* serve = app.add_subcommand("serve", "Serve /graphql over a backend");
    serve->add_option("--schema", serve_options.schema_path, "SDL file")->required();
    serve->add_option("--bindings", serve_options.bindings_path, "Binding manifest")
        ->required();
    serve->add_option("--backend", serve_options.backend_url, "REST backend base URL");
    serve->add_option("--fixtures", serve_options.fixtures_path, "Fixture backend file");
    serve->add_option("--port", serve_options.port, "Listen port")->required();
    serve->add_option("--pass-header", serve_options.pass_headers,
                      "Header passed through to the HTTP backend (repeatable)");

    BenchOptionsCli bench_options;
    auto* bench = app.add_subcommand("bench", "Under-fetching benchmark: REST vs GraphQL");
    bench->add_option("--chain", bench_options.chain, "Dependent call chain length")
        ->check(CLI::PositiveNumber);
    bench->add_option("--latency-ms", bench_options.latency_ms,
                      "Injected per-call latency in milliseconds");
    bench->add_option("--trials", bench_options.trials, "Measured trials per chain length")
        ->check(CLI::PositiveNumber);

    PipelineOptions explain_options;
    auto* explain = app.add_subcommand("explain", "Print the processed definition model");
    add_pipeline_options(explain, explain_options);

    CLI11_PARSE(app, argc, argv);

    if (convert->parsed()) {
        return cmd_convert(convert_options);
    }
    if (validate->parsed()) {
        return cmd_validate(validate_path);
    }
    if (serve->parsed()) {
        return cmd_serve(serve_options);
    }
    if (bench->parsed()) {
        return cmd_bench(bench_options);
    }
    if (explain->parsed()) {
        return cmd_explain(explain_options);
    }
    return kExitIngest;
}
