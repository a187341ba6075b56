#pragma once
// Batch driver: load a dataset, replay a script of operations, emit output.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "grove/operations.hpp"

namespace grove {

// One line per row: two spaces per depth level, then the label or
// "[k × Type, ...]" for aggregates, then visible/hidden/graph edge counts.
std::string render_text(const nlohmann::json& layout_document);

enum class OutputKind { layout, text, counts, paths };

struct Script {
    std::string dataset;
    std::vector<Operation> ops;
    OutputKind output = OutputKind::layout;
    std::optional<std::pair<std::string, std::string>> path_ends;  // OutputKind::paths
};

// Malformed script structure raises PreconditionError; a malformed op raises
// OperationError with its index.
Script parse_script(const nlohmann::json& j);

// Output text of a replayed script. Throws like apply_batch.
std::string run_script(const Script& script, const std::filesystem::path& data_dir);

enum ExitCode : int { kExitOk = 0, kExitIo = 1, kExitValidation = 2 };

struct RunResult {
    int exit_code = kExitOk;
    std::string message;  // diagnostic when exit_code != 0
};

// Reads the script, writes the output file. `format` overrides the script's
// output selector when set.
RunResult run(const std::filesystem::path& script_path, const std::filesystem::path& data_dir,
              const std::filesystem::path& out_path, std::optional<OutputKind> format = std::nullopt);

OutputKind parse_output_kind(std::string_view text);

}  // namespace grove
