#pragma once
// Per-session view configuration consumed by the layout: branch modes,
// aggregation flags, degree-of-interest, sorting, pinned path and the
// node sets shown in the matrix and attribute table.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "grove/graph.hpp"
#include "grove/order.hpp"

namespace grove {

enum class BranchMode { tree, level };

std::string_view to_string(BranchMode mode);
BranchMode parse_branch_mode(std::string_view text);

// Binary degree-of-interest. Empty `types` means every type that declares
// the attribute.
struct DOIFunction {
    AttributePredicate predicate;
    std::set<std::string> types;

    bool matches(const Graph& graph, NodeIndex node) const;
    bool operator==(const DOIFunction& other) const;
};

struct LayoutConfig {
    // Annotations apply to the subtree of the annotated node; the nearest
    // annotated ancestor wins.
    std::map<std::string, BranchMode> modes;
    std::map<std::string, bool> aggregate;
    std::optional<DOIFunction> doi;
    OrderSpec sort;
    std::vector<std::string> pinned_path;
    // nullopt: auto-populated
    std::optional<std::vector<std::string>> matrix_columns;
    // nullopt: every attribute column of the dataset
    std::optional<std::vector<std::string>> attribute_columns;
};

}  // namespace grove
