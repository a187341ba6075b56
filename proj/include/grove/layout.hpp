#pragma once
// Linearization of a session's forest into rows.
//
// Trees are emitted in root-addition order. A tree-mode node is followed by
// its children's subtrees in sort order; a level-mode branch root is followed
// by its descendants grouped by depth relative to it. Aggregation collapses
// leaf siblings (tree mode) or whole levels (level mode) into aggregate rows,
// and a degree-of-interest function pulls matching members back out into
// individual rows placed just before their aggregate.
//
// Nodes of a pinned path, and their ancestors, are always laid out in tree
// mode and never aggregated, and each path node is the first child emitted
// under its predecessor, so the path occupies consecutive rows.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "grove/session.hpp"
#include "grove/view.hpp"

namespace grove {

enum class RowKind { individual, aggregate };

struct Row {
    RowKind kind = RowKind::individual;
    // individual: the node; aggregate: the node owning the aggregated
    // branch (parent of the leaves in tree mode, branch root in level mode)
    NodeIndex node = 0;
    std::vector<NodeIndex> members;  // aggregate only, in sort order
    int depth = 0;
    std::optional<std::size_t> parent_row;
    BranchMode mode = BranchMode::tree;
    bool doi = false;  // individual row extracted from an aggregate by the DOI
    std::size_t tree = 0;

    bool is_aggregate() const { return kind == RowKind::aggregate; }
    // The node(s) covered by this row.
    std::vector<NodeIndex> nodes() const;
};

struct LayoutResult {
    std::vector<Row> rows;  // y-index = position
    OrderSpec sort;
    std::uint64_t revision = 0;
    std::unordered_map<NodeIndex, std::size_t> row_of;

    std::optional<std::size_t> find_row(NodeIndex n) const;
};

LayoutResult linearize(const Session& session, const LayoutConfig& config);
inline LayoutResult linearize(const Session& session) { return linearize(session, session.view()); }

// Extracts DOI-matching members of aggregate rows into individual rows
// placed immediately before their aggregate. Empty aggregates are dropped.
LayoutResult apply_doi(const Session& session, LayoutResult layout, const DOIFunction& doi);

// Effective branch mode of a tree node under a configuration (pinned-path
// exemption included).
BranchMode effective_mode(const Session& session, const LayoutConfig& config, NodeIndex n);

// The pinned path when it is still a parent-to-child chain, else empty.
std::vector<NodeIndex> active_pinned_path(const Session& session, const LayoutConfig& config);

}  // namespace grove
