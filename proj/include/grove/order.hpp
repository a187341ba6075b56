#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "grove/graph.hpp"

namespace grove {

class Session;

enum class OrderKey {
    label,
    degree,     // degree in the induced subgraph
    attribute,
    visible,    // tree edges incident to the node
    hidden,     // induced edges that are not tree edges
    graph,      // degree in the underlying graph
};

enum class Direction { ascending, descending };

struct OrderSpec {
    OrderKey key = OrderKey::label;
    std::string attribute;  // only for OrderKey::attribute
    Direction direction = Direction::ascending;

    bool operator==(const OrderSpec&) const = default;
};

std::string_view to_string(OrderKey key);
OrderKey parse_order_key(std::string_view text);

// Comparable scalar. Absent keys sort after every present key whatever the
// direction; numbers compare numerically, text lexicographically.
struct SortKey {
    bool present = false;
    bool numeric = true;
    double number = 0.0;
    std::string text;
};

// <0, 0, >0. Direction is applied to present keys only.
int compare_keys(const SortKey& a, const SortKey& b, Direction direction);

// Node value for an attribute key. Ordinal values map to their category rank.
SortKey attribute_key(const Graph& graph, NodeIndex node, std::string_view attribute);

// Strict weak order on nodes of a session: the order key, then label, then id.
class NodeOrder {
public:
    NodeOrder(const Session& session, OrderSpec spec);

    bool operator()(NodeIndex a, NodeIndex b) const;
    SortKey key(NodeIndex n) const;
    // Sorts with each key computed once.
    void sort(std::vector<NodeIndex>& nodes) const;
    const OrderSpec& spec() const { return spec_; }

private:
    const Session& session_;
    OrderSpec spec_;
};

// Label then id; the universal tie-break.
bool label_less(const Graph& graph, NodeIndex a, NodeIndex b);

}  // namespace grove
