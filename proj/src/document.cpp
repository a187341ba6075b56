#include "grove/document.hpp"

#include "grove/serialize.hpp"

namespace grove {

using nlohmann::json;

namespace {

json optional_index(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json members_by_type(const Graph& graph, const std::vector<NodeIndex>& members) {
    json out = json::object();
    for (NodeIndex m : members) {
        json& ids = out[graph.node(m).type];
        if (ids.is_null()) ids = json::array();
        ids.push_back(graph.node(m).id);
    }
    return out;
}

json row_json(const Session& session, const Row& row, std::size_t y) {
    const Graph& graph = session.graph();
    const Node& node = graph.node(row.node);
    json j{{"yIndex", y},
           {"kind", row.is_aggregate() ? "aggregate" : "individual"},
           {"depth", row.depth},
           {"parentRowIndex", optional_index(row.parent_row)},
           {"mode", std::string(to_string(row.mode))},
           {"tree", row.tree}};
    if (row.is_aggregate()) {
        j["ownerId"] = node.id;
        j["memberCount"] = row.members.size();
        j["members"] = members_by_type(graph, row.members);
    } else {
        j["nodeId"] = node.id;
        j["label"] = node.label;
        j["type"] = node.type;
        j["doi"] = row.doi;
    }
    return j;
}

json counts_json(const CountMaxima& m) {
    return {{"visible", m.visible}, {"hidden", m.hidden}, {"graph", m.graph}};
}

json edge_counts_json(const EdgeCounts& counts) {
    json rows = json::array();
    for (const auto& c : counts.rows) {
        rows.push_back({{"visible", c.visible},
                        {"hidden", c.hidden},
                        {"graph", c.graph},
                        {"text",
                         {{"visible", format_count(c.visible)},
                          {"hidden", format_count(c.hidden)},
                          {"graph", format_count(c.graph)}}}});
    }
    return {{"rows", std::move(rows)},
            {"max", {{"individual", counts_json(counts.individual_max)}, {"aggregate", counts_json(counts.aggregate_max)}}}};
}

json matrix_json(const Graph& graph, const MatrixModel& model) {
    json columns = json::array();
    for (NodeIndex c : model.columns) columns.push_back(graph.node(c).id);
    json cells = json::array();
    for (const auto& row : model.cells) {
        json r = json::array();
        for (const auto& cell : row) r.push_back({{"count", cell.count}, {"normalized", cell.normalized}});
        cells.push_back(std::move(r));
    }
    return {{"columns", std::move(columns)}, {"cells", std::move(cells)}};
}

json cell_json(const Column& column, const Cell& cell) {
    if (!cell.aggregate) return {{"value", cell.value ? to_json(*cell.value) : json(nullptr)}};
    json j{{"count", cell.summary.count}};
    switch (column.kind) {
        case AttributeKind::numeric:
            j["min"] = optional_number(cell.summary.min);
            j["max"] = optional_number(cell.summary.max);
            j["mean"] = optional_number(cell.summary.mean);
            break;
        case AttributeKind::ordinal:
        case AttributeKind::nominal:
            j["categories"] = cell.summary.categories;
            break;
        default:
            break;
    }
    return j;
}

std::vector<NodeIndex> matrix_columns(const Session& session) {
    const auto& configured = session.view().matrix_columns;
    if (!configured) return auto_populate_matrix(session);
    std::vector<NodeIndex> out;
    for (const auto& id : *configured) out.push_back(session.graph().require_node(id));
    return out;
}

std::vector<Column> table_columns(const Session& session) {
    const auto& configured = session.view().attribute_columns;
    if (!configured) return available_columns(session.graph());
    return select_columns(session.graph(), *configured);
}

}  // namespace

json to_json(const AttributeTable& table) {
    json columns = json::array();
    for (const auto& c : table.columns) {
        columns.push_back({{"attribute", c.attribute},
                           {"kind", std::string(to_string(c.kind))},
                           {"types", c.types},
                           {"min", optional_number(c.min)},
                           {"max", optional_number(c.max)},
                           {"categories", c.categories}});
    }
    json cells = json::array();
    for (const auto& row : table.cells) {
        json r = json::array();
        for (std::size_t i = 0; i < row.size(); ++i) r.push_back(cell_json(table.columns[i], row[i]));
        cells.push_back(std::move(r));
    }
    return {{"columns", std::move(columns)}, {"cells", std::move(cells)}};
}

json to_json(const Histogram& histogram) {
    return {{"attribute", histogram.attribute}, {"edges", histogram.edges}, {"counts", histogram.counts}};
}

json to_json(const Session& session, const PathResult& result) {
    const Graph& graph = session.graph();
    json paths = json::array();
    for (const auto& path : result.paths) {
        json nodes = json::array();
        for (NodeIndex n : path.nodes) nodes.push_back(graph.node(n).id);
        json steps = json::array();
        for (const auto& step : path.steps)
            steps.push_back({{"edge", graph.edge(step.edge).id}, {"kind", step.kind == StepKind::tree ? "tree" : "hidden"}});
        paths.push_back({{"nodes", std::move(nodes)}, {"steps", std::move(steps)}});
    }
    return {{"from", graph.node(result.from).id},
            {"to", graph.node(result.to).id},
            {"length", optional_index(result.length)},
            {"paths", std::move(paths)},
            {"truncated", result.truncated}};
}

json to_json(const Session& session, const std::vector<HiddenEdge>& edges) {
    const Graph& graph = session.graph();
    json out = json::array();
    for (const auto& e : edges) {
        out.push_back({{"edge", graph.edge(e.edge).id},
                       {"from", graph.node(e.from).id},
                       {"other", graph.node(e.other).id},
                       {"otherRow", optional_index(e.other_row)},
                       {"internal", e.internal}});
    }
    return out;
}

json layout_document(const Session& session, const DocumentOptions& options) {
    const Graph& graph = session.graph();
    const LayoutResult layout = linearize(session);

    json rows = json::array();
    for (std::size_t y = 0; y < layout.rows.size(); ++y) rows.push_back(row_json(session, layout.rows[y], y));

    json pending = json::array();
    for (NodeIndex n : session.pending()) pending.push_back(graph.node(n).id);

    json doc{{"revision", session.revision()},
             {"sort", to_json(layout.sort)},
             {"view", to_json(session.view())},
             {"rows", std::move(rows)},
             {"pending", std::move(pending)},
             {"edgeCounts", edge_counts_json(edge_counts(session, layout))},
             {"matrix", matrix_json(graph, matrix(session, layout, matrix_columns(session)))},
             {"attributeTable", to_json(build_table(session, layout, table_columns(session)))}};

    json hidden = nullptr;
    if (auto selected = session.selection(); selected && session.in_subgraph(*selected)) {
        hidden = {{"node", graph.node(*selected).id},
                  {"edges", to_json(session, hidden_edges_of(session, layout, *selected))}};
    }
    doc["hiddenEdges"] = std::move(hidden);

    if (options.paths) {
        NodeIndex a = graph.require_node(options.paths->first);
        NodeIndex b = graph.require_node(options.paths->second);
        doc["paths"] = to_json(session, all_shortest_paths(session, a, b));
    }
    return doc;
}

std::string dump_document(const json& document) { return document.dump(2) + "\n"; }

}  // namespace grove
