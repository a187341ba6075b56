#include "grove/order.hpp"

#include <algorithm>
#include <numeric>

#include "grove/error.hpp"
#include "grove/session.hpp"

namespace grove {

std::string_view to_string(OrderKey key) {
    switch (key) {
        case OrderKey::label: return "label";
        case OrderKey::degree: return "degree";
        case OrderKey::attribute: return "attribute";
        case OrderKey::visible: return "visible";
        case OrderKey::hidden: return "hidden";
        case OrderKey::graph: return "graph";
    }
    return "label";
}

OrderKey parse_order_key(std::string_view text) {
    if (text == "label") return OrderKey::label;
    if (text == "degree") return OrderKey::degree;
    if (text == "attribute") return OrderKey::attribute;
    if (text == "visible") return OrderKey::visible;
    if (text == "hidden") return OrderKey::hidden;
    if (text == "graph") return OrderKey::graph;
    throw PreconditionError("unknown sort key '" + std::string(text) + "'");
}

int compare_keys(const SortKey& a, const SortKey& b, Direction direction) {
    if (!a.present || !b.present) {
        if (a.present == b.present) return 0;
        return a.present ? -1 : 1;
    }
    int c = 0;
    if (a.numeric && b.numeric) {
        c = a.number < b.number ? -1 : (a.number > b.number ? 1 : 0);
    } else if (a.numeric != b.numeric) {
        c = a.numeric ? -1 : 1;
    } else {
        c = a.text.compare(b.text);
        c = c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    return direction == Direction::ascending ? c : -c;
}

SortKey attribute_key(const Graph& graph, NodeIndex node, std::string_view attribute) {
    SortKey key;
    const AttributeValue* value = graph.node(node).attribute(attribute);
    if (!value) return key;
    key.present = true;
    if (const auto* number = std::get_if<double>(value)) {
        key.number = *number;
        return key;
    }
    if (const auto* text = std::get_if<std::string>(value)) {
        const AttributeDef* def = graph.type_of(node).find_attribute(attribute);
        if (def && def->kind == AttributeKind::ordinal) {
            if (auto rank = def->category_rank(*text)) {
                key.number = static_cast<double>(*rank);
                return key;
            }
        }
        key.numeric = false;
        key.text = *text;
        return key;
    }
    // set-valued: cardinality
    key.number = static_cast<double>(std::get<std::vector<std::string>>(*value).size());
    return key;
}

bool label_less(const Graph& graph, NodeIndex a, NodeIndex b) {
    const Node& na = graph.node(a);
    const Node& nb = graph.node(b);
    if (na.label != nb.label) return na.label < nb.label;
    return na.id < nb.id;
}

NodeOrder::NodeOrder(const Session& session, OrderSpec spec) : session_(session), spec_(std::move(spec)) {}

SortKey NodeOrder::key(NodeIndex n) const {
    SortKey key;
    key.present = true;
    switch (spec_.key) {
        case OrderKey::label:
            key.numeric = false;
            key.text = session_.graph().node(n).label;
            break;
        case OrderKey::degree:
            key.number = static_cast<double>(session_.subgraph_degree(n));
            break;
        case OrderKey::attribute:
            return attribute_key(session_.graph(), n, spec_.attribute);
        case OrderKey::visible:
            key.number = static_cast<double>(session_.tree_degree(n));
            break;
        case OrderKey::hidden:
            key.number = static_cast<double>(session_.subgraph_degree(n) - session_.tree_degree(n));
            break;
        case OrderKey::graph:
            key.number = static_cast<double>(session_.graph().degree(n));
            break;
    }
    return key;
}

bool NodeOrder::operator()(NodeIndex a, NodeIndex b) const {
    int c = compare_keys(key(a), key(b), spec_.direction);
    if (c != 0) return c < 0;
    return label_less(session_.graph(), a, b);
}

void NodeOrder::sort(std::vector<NodeIndex>& nodes) const {
    std::vector<SortKey> keys;
    keys.reserve(nodes.size());
    for (NodeIndex n : nodes) keys.push_back(key(n));
    std::vector<std::size_t> perm(nodes.size());
    std::iota(perm.begin(), perm.end(), 0);
    const Graph& graph = session_.graph();
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        int c = compare_keys(keys[a], keys[b], spec_.direction);
        if (c != 0) return c < 0;
        return label_less(graph, nodes[a], nodes[b]);
    });
    std::vector<NodeIndex> sorted;
    sorted.reserve(nodes.size());
    for (std::size_t i : perm) sorted.push_back(nodes[i]);
    nodes = std::move(sorted);
}

}  // namespace grove
