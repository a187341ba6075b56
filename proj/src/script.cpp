#include "grove/script.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "grove/document.hpp"

namespace grove {

using nlohmann::json;

namespace {

std::string row_text(const json& row) {
    if (row.at("kind") == "individual") return row.at("label").get<std::string>() + (row.at("doi").get<bool>() ? " *" : "");
    std::string text = "[";
    bool first = true;
    for (const auto& [type, ids] : row.at("members").items()) {
        if (!first) text += ", ";
        text += std::to_string(ids.size()) + " × " + type;
        first = false;
    }
    return text + "]";
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

std::string render_text(const json& document) {
    const json& rows = document.at("rows");
    const json* counts = nullptr;
    if (auto it = document.find("edgeCounts"); it != document.end()) counts = &it->at("rows");
    std::string out;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const json& row = rows[i];
        out += std::string(2 * row.at("depth").get<std::size_t>(), ' ') + row_text(row);
        if (counts && i < counts->size()) {
            const json& text = (*counts)[i].at("text");
            out += "  " + text.at("visible").get<std::string>() + "/" + text.at("hidden").get<std::string>() + "/" +
                   text.at("graph").get<std::string>();
        }
        out += "\n";
    }
    return out;
}

OutputKind parse_output_kind(std::string_view text) {
    if (text == "layout") return OutputKind::layout;
    if (text == "text") return OutputKind::text;
    if (text == "counts") return OutputKind::counts;
    if (text == "paths") return OutputKind::paths;
    throw PreconditionError("unknown output '" + std::string(text) + "'");
}

Script parse_script(const json& j) {
    if (!j.is_object()) throw PreconditionError("script must be an object");
    Script script;
    auto dataset = j.find("dataset");
    if (dataset == j.end() || !dataset->is_string()) throw PreconditionError("script needs a 'dataset' string");
    script.dataset = dataset->get<std::string>();
    if (auto ops = j.find("ops"); ops != j.end()) script.ops = parse_operations(*ops);
    if (auto output = j.find("output"); output != j.end()) {
        if (output->is_string()) {
            script.output = parse_output_kind(output->get<std::string>());
        } else if (output->is_object() && output->contains("paths")) {
            const json& ends = output->at("paths");
            if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
                throw PreconditionError("'paths' output needs two node ids");
            script.output = OutputKind::paths;
            script.path_ends = {ends[0].get<std::string>(), ends[1].get<std::string>()};
        } else {
            throw PreconditionError("unknown output selector");
        }
    }
    if (script.output == OutputKind::paths && !script.path_ends)
        throw PreconditionError("'paths' output needs two node ids");
    return script;
}

std::string run_script(const Script& script, const std::filesystem::path& data_dir) {
    auto graph = std::make_shared<const Graph>(load_dataset(data_dir / script.dataset));
    Session session(graph);
    apply_batch(session, script.ops);
    switch (script.output) {
        case OutputKind::layout:
            return dump_document(layout_document(session));
        case OutputKind::text:
            return render_text(layout_document(session));
        case OutputKind::counts:
            return dump_document(layout_document(session).at("edgeCounts"));
        case OutputKind::paths: {
            const Graph& g = session.graph();
            NodeIndex a = g.require_node(script.path_ends->first);
            NodeIndex b = g.require_node(script.path_ends->second);
            return dump_document(to_json(session, all_shortest_paths(session, a, b)));
        }
    }
    return {};
}

RunResult run(const std::filesystem::path& script_path, const std::filesystem::path& data_dir,
              const std::filesystem::path& out_path, std::optional<OutputKind> format) {
    json document;
    try {
        document = json::parse(read_file(script_path));
    } catch (const std::exception& e) {
        return {kExitIo, std::string("cannot read script: ") + e.what()};
    }
    std::string output;
    try {
        Script script = parse_script(document);
        if (format) {
            if (*format == OutputKind::paths && !script.path_ends)
                return {kExitValidation, "--format paths needs a script with a 'paths' output"};
            script.output = *format;
        }
        output = run_script(script, data_dir);
    } catch (const LoadError& e) {
        return {kExitIo, e.what()};
    } catch (const Error& e) {
        return {kExitValidation, e.what()};
    } catch (const std::exception& e) {
        return {kExitIo, e.what()};
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) return {kExitIo, "cannot write " + out_path.string()};
    out << output;
    if (!out) return {kExitIo, "cannot write " + out_path.string()};
    return {};
}

}  // namespace grove
