#include "grove/attributes.hpp"

#include <algorithm>
#include <cmath>

#include "grove/error.hpp"

namespace grove {

bool Column::applies_to(const std::string& type) const {
    return std::find(types.begin(), types.end(), type) != types.end();
}

std::vector<Column> available_columns(const Graph& graph) {
    std::vector<Column> columns;
    for (const auto& type : graph.node_types()) {
        for (const auto& def : type.attributes) {
            auto it = std::find_if(columns.begin(), columns.end(), [&](const Column& c) {
                return c.attribute == def.name && c.kind == def.kind;
            });
            if (it == columns.end()) {
                columns.push_back({def.name, def.kind, {}, {}, {}, {}});
                it = columns.end() - 1;
            }
            it->types.push_back(type.name);
            if (def.min) it->min = it->min ? std::min(*it->min, *def.min) : *def.min;
            if (def.max) it->max = it->max ? std::max(*it->max, *def.max) : *def.max;
            for (const auto& category : def.categories)
                if (std::find(it->categories.begin(), it->categories.end(), category) == it->categories.end())
                    it->categories.push_back(category);
        }
    }
    for (const auto& node : graph.nodes()) {
        for (auto& column : columns) {
            if (column.kind != AttributeKind::numeric || !column.applies_to(node.type)) continue;
            const AttributeValue* value = node.attribute(column.attribute);
            if (!value) continue;
            double v = std::get<double>(*value);
            column.min = column.min ? std::min(*column.min, v) : v;
            column.max = column.max ? std::max(*column.max, v) : v;
        }
    }
    return columns;
}

std::vector<Column> select_columns(const Graph& graph, const std::vector<std::string>& attributes) {
    const std::vector<Column> all = available_columns(graph);
    std::vector<Column> out;
    for (const auto& name : attributes) {
        bool found = false;
        for (const auto& column : all) {
            if (column.attribute != name) continue;
            out.push_back(column);
            found = true;
        }
        if (!found) throw PreconditionError("unknown attribute '" + name + "'");
    }
    return out;
}

Summary summarize(AttributeKind kind, const std::vector<AttributeValue>& values) {
    Summary s;
    s.count = values.size();
    if (kind == AttributeKind::numeric) {
        if (values.empty()) return s;
        double sum = 0;
        for (const auto& value : values) {
            double v = std::get<double>(value);
            s.min = s.min ? std::min(*s.min, v) : v;
            s.max = s.max ? std::max(*s.max, v) : v;
            sum += v;
        }
        s.mean = sum / static_cast<double>(values.size());
    } else if (kind == AttributeKind::ordinal || kind == AttributeKind::nominal) {
        for (const auto& value : values) ++s.categories[std::get<std::string>(value)];
    }
    // TODO: set-valued aggregates only report the member count; decide on an
    // element-frequency summary once a dataset needs it.
    return s;
}

AttributeTable build_table(const Session& session, const LayoutResult& layout, const std::vector<Column>& columns) {
    const Graph& graph = session.graph();
    AttributeTable table;
    table.columns = columns;
    table.cells.reserve(layout.rows.size());
    for (const auto& row : layout.rows) {
        std::vector<Cell> cells;
        cells.reserve(columns.size());
        for (const auto& column : columns) {
            Cell cell;
            cell.aggregate = row.is_aggregate();
            for (NodeIndex n : row.nodes()) {
                const Node& node = graph.node(n);
                if (!column.applies_to(node.type)) continue;
                const AttributeValue* value = node.attribute(column.attribute);
                if (!value) continue;
                if (cell.aggregate)
                    cell.values.push_back(*value);
                else
                    cell.value = *value;
            }
            if (cell.aggregate) cell.summary = summarize(column.kind, cell.values);
            cells.push_back(std::move(cell));
        }
        table.cells.push_back(std::move(cells));
    }
    return table;
}

Histogram histogram(const Session& session, const Column& column, std::size_t bins) {
    if (column.kind != AttributeKind::numeric)
        throw PreconditionError("histogram needs a numeric column, '" + column.attribute + "' is " +
                                std::string(to_string(column.kind)));
    if (bins == 0) throw PreconditionError("histogram needs at least one bin");
    const Graph& graph = session.graph();
    std::vector<double> values;
    for (NodeIndex n : session.subgraph_nodes()) {
        const Node& node = graph.node(n);
        if (!column.applies_to(node.type)) continue;
        if (const AttributeValue* value = node.attribute(column.attribute)) values.push_back(std::get<double>(*value));
    }
    Histogram h;
    h.attribute = column.attribute;
    h.counts.assign(bins, 0);
    if (values.empty()) {
        h.edges.assign(bins + 1, 0.0);
        return h;
    }
    auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    const double width = (hi - lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) h.edges.push_back(i == bins ? hi : lo + width * static_cast<double>(i));
    for (double v : values) {
        std::size_t bin = width > 0 ? static_cast<std::size_t>((v - lo) / width) : 0;
        ++h.counts[std::min(bin, bins - 1)];
    }
    return h;
}

DOIFunction doi_from_brush(const Column& column, std::optional<double> lo, std::optional<double> hi) {
    if (lo && hi && *lo > *hi) throw PreconditionError("brush has lo > hi");
    DOIFunction doi;
    doi.predicate.attribute = column.attribute;
    doi.predicate.min = lo;
    doi.predicate.max = hi;
    doi.types.insert(column.types.begin(), column.types.end());
    return doi;
}

SortKey sort_key(const Session& session, const Column& column, const Row& row) {
    const Graph& graph = session.graph();
    if (!row.is_aggregate()) {
        if (!column.applies_to(graph.node(row.node).type)) return {};
        return attribute_key(graph, row.node, column.attribute);
    }
    std::vector<AttributeValue> values;
    for (NodeIndex n : row.members) {
        if (!column.applies_to(graph.node(n).type)) continue;
        if (const AttributeValue* value = graph.node(n).attribute(column.attribute)) values.push_back(*value);
    }
    SortKey key;
    if (values.empty()) return key;
    Summary summary = summarize(column.kind, values);
    key.present = true;
    if (summary.mean) {
        key.number = *summary.mean;
        return key;
    }
    if (summary.categories.empty()) {
        key.number = static_cast<double>(summary.count);
        return key;
    }
    // modal category; ties go to the first in category order
    auto best = summary.categories.begin();
    for (auto it = summary.categories.begin(); it != summary.categories.end(); ++it)
        if (it->second > best->second) best = it;
    key.numeric = false;
    key.text = best->first;
    if (column.kind == AttributeKind::ordinal) {
        auto rank = std::find(column.categories.begin(), column.categories.end(), best->first);
        if (rank != column.categories.end()) {
            key.numeric = true;
            key.number = static_cast<double>(rank - column.categories.begin());
        }
    }
    return key;
}

}  // namespace grove
