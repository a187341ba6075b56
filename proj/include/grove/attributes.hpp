#pragma once
// Attribute columns aligned with layout rows.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grove/layout.hpp"
#include "grove/order.hpp"
#include "grove/session.hpp"
#include "grove/view.hpp"

namespace grove {

// One column per (attribute name, kind), possibly spanning several types.
struct Column {
    std::string attribute;
    AttributeKind kind = AttributeKind::numeric;
    std::vector<std::string> types;
    // numeric: declared domain, widened to the observed values
    std::optional<double> min;
    std::optional<double> max;
    std::vector<std::string> categories;

    bool applies_to(const std::string& type) const;
};

// Columns in schema order (first type declaring the attribute wins).
std::vector<Column> available_columns(const Graph& graph);
// Columns whose attribute name is listed, in the listed order.
std::vector<Column> select_columns(const Graph& graph, const std::vector<std::string>& attributes);

struct Summary {
    std::size_t count = 0;
    // numeric
    std::optional<double> min;
    std::optional<double> max;
    std::optional<double> mean;
    // ordinal / nominal
    std::map<std::string, std::size_t> categories;

    bool operator==(const Summary&) const = default;
};

Summary summarize(AttributeKind kind, const std::vector<AttributeValue>& values);

struct Cell {
    bool aggregate = false;
    std::optional<AttributeValue> value;  // individual rows
    std::vector<AttributeValue> values;   // aggregate rows; absent values omitted
    Summary summary;                      // aggregate rows
};

struct AttributeTable {
    std::vector<Column> columns;
    std::vector<std::vector<Cell>> cells;  // [row][column]
};

AttributeTable build_table(const Session& session, const LayoutResult& layout, const std::vector<Column>& columns);

struct Histogram {
    std::string attribute;
    std::vector<double> edges;  // bins + 1 edges
    std::vector<std::size_t> counts;
};

// Equal-width bins over the observed [min, max] of every subgraph node of an
// applicable type carrying the attribute. No values: all-zero edges and counts.
Histogram histogram(const Session& session, const Column& column, std::size_t bins);

// Inclusive on both ends; an open end is unbounded.
DOIFunction doi_from_brush(const Column& column, std::optional<double> lo, std::optional<double> hi);

// Individual rows: the value. Aggregate rows: the mean for numeric columns,
// the most frequent category otherwise.
SortKey sort_key(const Session& session, const Column& column, const Row& row);

}  // namespace grove
