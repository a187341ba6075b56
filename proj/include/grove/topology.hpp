#pragma once
// Topology summaries aligned with layout rows: edge counts, hidden edges,
// the hybrid adjacency matrix and shortest-path search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grove/layout.hpp"
#include "grove/session.hpp"

namespace grove {

struct RowEdgeCounts {
    std::size_t visible = 0;  // tree edges incident to the row's nodes
    std::size_t hidden = 0;   // induced edges that are not tree edges
    std::size_t graph = 0;    // degree in the underlying graph
};

struct CountMaxima {
    std::size_t visible = 0;
    std::size_t hidden = 0;
    std::size_t graph = 0;
};

// One entry per layout row; aggregate rows sum over members. Maxima are the
// per-column normalization denominators, separate for individual and
// aggregate rows.
struct EdgeCounts {
    std::vector<RowEdgeCounts> rows;
    CountMaxima individual_max;
    CountMaxima aggregate_max;
};

EdgeCounts edge_counts(const Session& session, const LayoutResult& layout);

struct HiddenEdge {
    EdgeIndex edge;
    NodeIndex from;   // endpoint inside the queried row
    NodeIndex other;
    std::optional<std::size_t> other_row;
    bool internal = false;  // both endpoints inside the queried aggregate
};

std::vector<HiddenEdge> hidden_edges_of(const Session& session, const LayoutResult& layout, NodeIndex node);
std::vector<HiddenEdge> hidden_edges_of_row(const Session& session, const LayoutResult& layout, std::size_t row);

struct MatrixCell {
    std::size_t count = 0;   // members adjacent to the column node
    double normalized = 0;   // count / member count of the row
};

struct MatrixModel {
    std::vector<NodeIndex> columns;
    std::vector<std::vector<MatrixCell>> cells;  // [row][column]
};

// Adjacency is taken from the underlying graph, so columns need not be in
// the subgraph.
MatrixModel matrix(const Session& session, const LayoutResult& layout, const std::vector<NodeIndex>& columns);

inline constexpr std::size_t kDefaultMatrixColumns = 5;

// Top-k tree nodes by induced-subgraph degree; ties by label then id.
std::vector<NodeIndex> auto_populate_matrix(const Session& session, std::size_t k = kDefaultMatrixColumns);

enum class StepKind { tree, hidden };

struct PathStep {
    EdgeIndex edge;
    StepKind kind;
};

struct ShortestPath {
    std::vector<NodeIndex> nodes;
    std::vector<PathStep> steps;  // steps[i] joins nodes[i] and nodes[i + 1]
};

inline constexpr std::size_t kMaxPaths = 64;

struct PathResult {
    NodeIndex from = 0;
    NodeIndex to = 0;
    std::optional<std::size_t> length;  // hop count; nullopt when disconnected
    std::vector<ShortestPath> paths;
    bool truncated = false;
};

// Every minimum-hop path over induced subgraph edges, direction ignored.
// Paths come in lexicographic order of (label, id) sequences; at most
// `limit` are listed and `truncated` reports whether more exist.
PathResult all_shortest_paths(const Session& session, NodeIndex a, NodeIndex b, std::size_t limit = kMaxPaths);

// "14", "3h", "17k": below 100 as is, else the leading digit(s) of the
// hundreds or thousands with an h/k suffix.
std::string format_count(std::uint64_t n);

}  // namespace grove
