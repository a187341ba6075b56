#include <fstream>

#include <nlohmann/json.hpp>

#include "grove/error.hpp"
#include "grove/graph.hpp"

namespace grove {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_required_string(const json& record, const char* field, const std::string& file, std::size_t line) {
    auto it = record.find(field);
    if (it == record.end() || !it->is_string())
        throw LoadError(file, line, std::string("missing or non-string field '") + field + "'");
    return it->get<std::string>();
}

AttributeValue parse_value(const json& value, const std::string& file, std::size_t line) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return value.get<std::string>();
    if (value.is_array()) {
        std::vector<std::string> items;
        for (const auto& item : value) {
            if (!item.is_string()) throw LoadError(file, line, "set attribute members must be strings");
            items.push_back(item.get<std::string>());
        }
        return items;
    }
    throw LoadError(file, line, "unsupported attribute value " + value.dump());
}

json value_to_json(const AttributeValue& value) {
    return std::visit([](const auto& v) { return json(v); }, value);
}

template <typename Fn>
void for_each_line(const fs::path& path, Fn&& fn) {
    std::ifstream in(path);
    if (!in) throw LoadError(path.string(), 0, "cannot open file");
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        json record;
        try {
            record = json::parse(text);
        } catch (const json::parse_error& e) {
            throw LoadError(path.string(), line, e.what());
        }
        if (!record.is_object()) throw LoadError(path.string(), line, "record is not an object");
        fn(record, line);
    }
}

}  // namespace

Graph load_dataset(const fs::path& dir) {
    const fs::path schema_path = dir / "schema.json";
    const std::string schema_file = schema_path.string();
    std::ifstream schema_in(schema_path);
    if (!schema_in) throw LoadError(schema_file, 0, "cannot open file");
    json schema;
    try {
        schema = json::parse(schema_in);
    } catch (const json::parse_error& e) {
        throw LoadError(schema_file, 0, e.what());
    }

    std::vector<NodeType> types;
    for (const auto& t : schema.value("nodeTypes", json::array())) {
        NodeType type;
        type.name = read_required_string(t, "name", schema_file, 0);
        if (t.contains("icon") && t["icon"].is_string()) type.icon_hint = t["icon"].get<std::string>();
        for (const auto& a : t.value("attributes", json::array())) {
            AttributeDef def;
            def.name = read_required_string(a, "name", schema_file, 0);
            def.kind = parse_attribute_kind(read_required_string(a, "kind", schema_file, 0));
            if (a.contains("min") && a["min"].is_number()) def.min = a["min"].get<double>();
            if (a.contains("max") && a["max"].is_number()) def.max = a["max"].get<double>();
            if (a.contains("categories")) def.categories = a["categories"].get<std::vector<std::string>>();
            type.attributes.push_back(std::move(def));
        }
        types.push_back(std::move(type));
    }
    std::vector<std::string> edge_types = schema.value("edgeTypes", std::vector<std::string>{});

    std::vector<Node> nodes;
    const fs::path nodes_path = dir / "nodes.jsonl";
    const std::string nodes_file = nodes_path.string();
    for_each_line(nodes_path, [&](const json& r, std::size_t line) {
        Node node;
        node.id = read_required_string(r, "id", nodes_file, line);
        node.type = read_required_string(r, "type", nodes_file, line);
        node.label = r.contains("label") && r["label"].is_string() ? r["label"].get<std::string>() : node.id;
        if (auto it = r.find("attributes"); it != r.end() && !it->is_null()) {
            if (!it->is_object()) throw LoadError(nodes_file, line, "attributes must be an object");
            for (const auto& [name, value] : it->items()) {
                if (value.is_null()) continue;
                node.attributes.emplace(name, parse_value(value, nodes_file, line));
            }
        }
        nodes.push_back(std::move(node));
    });

    std::vector<Edge> edges;
    const fs::path edges_path = dir / "edges.jsonl";
    const std::string edges_file = edges_path.string();
    for_each_line(edges_path, [&](const json& r, std::size_t line) {
        Edge edge;
        edge.id = read_required_string(r, "id", edges_file, line);
        edge.source = read_required_string(r, "source", edges_file, line);
        edge.target = read_required_string(r, "target", edges_file, line);
        if (auto it = r.find("type"); it != r.end() && it->is_string()) edge.type = it->get<std::string>();
        if (auto it = r.find("directed"); it != r.end()) {
            if (!it->is_boolean()) throw LoadError(edges_file, line, "'directed' must be a boolean");
            edge.directed = it->get<bool>();
        }
        edges.push_back(std::move(edge));
    });

    return Graph::build(std::move(types), std::move(edge_types), std::move(nodes), std::move(edges));
}

void save_dataset(const Graph& graph, const fs::path& dir) {
    fs::create_directories(dir);

    json schema;
    schema["nodeTypes"] = json::array();
    for (const auto& type : graph.node_types()) {
        json t{{"name", type.name}, {"attributes", json::array()}};
        if (type.icon_hint) t["icon"] = *type.icon_hint;
        for (const auto& def : type.attributes) {
            json a{{"name", def.name}, {"kind", std::string(to_string(def.kind))}};
            if (def.min) a["min"] = *def.min;
            if (def.max) a["max"] = *def.max;
            if (!def.categories.empty()) a["categories"] = def.categories;
            t["attributes"].push_back(std::move(a));
        }
        schema["nodeTypes"].push_back(std::move(t));
    }
    schema["edgeTypes"] = std::vector<std::string>(graph.edge_types().begin(), graph.edge_types().end());
    std::ofstream(dir / "schema.json") << schema.dump(2) << '\n';

    std::ofstream nodes_out(dir / "nodes.jsonl");
    for (const auto& node : graph.nodes()) {
        json attributes = json::object();
        for (const auto& [name, value] : node.attributes) attributes[name] = value_to_json(value);
        nodes_out << json{{"id", node.id}, {"type", node.type}, {"label", node.label}, {"attributes", attributes}}.dump()
                  << '\n';
    }

    std::ofstream edges_out(dir / "edges.jsonl");
    for (const auto& edge : graph.edges()) {
        json e{{"id", edge.id}, {"source", edge.source}, {"target", edge.target}, {"directed", edge.directed}};
        e["type"] = edge.type ? json(*edge.type) : json(nullptr);
        edges_out << e.dump() << '\n';
    }
}

}  // namespace grove
