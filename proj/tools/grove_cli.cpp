// grove: replay operation scripts or serve sessions over HTTP.

#include <csignal>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <httplib.h>

#include "grove/script.hpp"
#include "grove/service.hpp"

namespace {

httplib::Server* running_server = nullptr;

void stop_server(int) {
    if (running_server) running_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Graph exploration engine: batch replay and HTTP service"};
    app.require_subcommand(1);

    std::string data_dir;
    std::string script_path;
    std::string out_path;
    std::string format;
    auto* run = app.add_subcommand("run", "Replay a script and write its output");
    run->add_option("--data", data_dir, "Directory holding one subdirectory per dataset")->required();
    run->add_option("--script", script_path, "Script JSON: {dataset, ops, output}")->required();
    run->add_option("--out", out_path, "Output file")->required();
    run->add_option("--format", format, "Override the script output")
        ->check(CLI::IsMember({"layout", "text", "counts", "paths"}));

    std::string serve_data;
    std::string sessions_dir;
    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
    serve->add_option("--data", serve_data, std::string("Dataset directory (default: $") + grove::kDataDirEnv + ")");
    serve->add_option("--port", port, "Port to listen on")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "Address to bind");
    serve->add_option("--sessions", sessions_dir, "Directory for persisted session op logs");

    CLI11_PARSE(app, argc, argv);

    if (*run) {
        std::optional<grove::OutputKind> kind;
        if (!format.empty()) kind = grove::parse_output_kind(format);
        grove::RunResult result = grove::run(script_path, data_dir, out_path, kind);
        if (result.exit_code != grove::kExitOk) std::cerr << "error: " << result.message << "\n";
        return result.exit_code;
    }

    if (serve_data.empty()) {
        if (const char* env = std::getenv(grove::kDataDirEnv)) serve_data = env;
    }
    if (serve_data.empty()) {
        std::cerr << "error: no data directory (use --data or " << grove::kDataDirEnv << ")\n";
        return grove::kExitIo;
    }
    std::optional<std::filesystem::path> persisted;
    if (!sessions_dir.empty()) persisted = sessions_dir;
    grove::Service service(serve_data, persisted);
    httplib::Server server;
    service.mount(server);
    running_server = &server;
    std::signal(SIGINT, stop_server);
    std::signal(SIGTERM, stop_server);
    std::cerr << "listening on " << host << ":" << port << "\n";
    if (!server.listen(host, port)) {
        std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
        return grove::kExitIo;
    }
    return grove::kExitOk;
}
