#include "grove/view.hpp"

#include "grove/error.hpp"

namespace grove {

std::string_view to_string(BranchMode mode) {
    return mode == BranchMode::level ? "level" : "tree";
}

BranchMode parse_branch_mode(std::string_view text) {
    if (text == "tree") return BranchMode::tree;
    if (text == "level") return BranchMode::level;
    throw PreconditionError("unknown branch mode '" + std::string(text) + "'");
}

bool DOIFunction::matches(const Graph& graph, NodeIndex node) const {
    if (types.empty()) {
        if (!graph.type_of(node).find_attribute(predicate.attribute)) return false;
    } else if (!types.count(graph.node(node).type)) {
        return false;
    }
    return predicate.matches(graph.node(node));
}

bool DOIFunction::operator==(const DOIFunction& other) const {
    return predicate.attribute == other.predicate.attribute && predicate.min == other.predicate.min &&
           predicate.max == other.predicate.max && predicate.categories == other.predicate.categories &&
           types == other.types;
}

}  // namespace grove
