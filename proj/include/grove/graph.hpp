#pragma once
// Immutable typed property graph.
//
// Nodes and edges keep the order in which they were loaded; that order is the
// iteration order everywhere. Adjacency is stored as a CSR incidence list and
// ignores edge direction (direction is kept as metadata on the edge).

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace grove {

using NodeIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

enum class AttributeKind { numeric, ordinal, nominal, set, label };

std::string_view to_string(AttributeKind kind);
AttributeKind parse_attribute_kind(std::string_view text);

struct AttributeDef {
    std::string name;
    AttributeKind kind = AttributeKind::numeric;
    // numeric domain
    std::optional<double> min;
    std::optional<double> max;
    // ordinal / nominal domain; ordinal categories are ordered
    std::vector<std::string> categories;

    // Position of `category` in the declared category list, if any.
    std::optional<std::size_t> category_rank(std::string_view category) const;
};

struct NodeType {
    std::string name;
    std::optional<std::string> icon_hint;
    std::vector<AttributeDef> attributes;

    const AttributeDef* find_attribute(std::string_view attribute) const;
};

// numeric -> double, ordinal/nominal/label -> string, set -> list of strings
using AttributeValue = std::variant<double, std::string, std::vector<std::string>>;

struct Node {
    std::string id;
    std::string type;
    std::string label;
    // Absent attributes are simply not present in the map.
    std::map<std::string, AttributeValue, std::less<>> attributes;

    const AttributeValue* attribute(std::string_view name) const;
};

struct Edge {
    std::string id;
    std::string source;
    std::string target;
    std::optional<std::string> type;
    bool directed = false;
};

struct Incidence {
    NodeIndex other;
    EdgeIndex edge;
};

struct Neighbor {
    std::string node_id;
    std::string edge_id;

    bool operator==(const Neighbor&) const = default;
};

struct SearchHit {
    std::string node_id;
    std::string label;
    std::size_t degree = 0;
};

// Facet name (node type) -> hits sorted by degree descending, then label.
using FacetedResult = std::map<std::string, std::vector<SearchHit>>;

// Filter on one attribute: either an inclusive numeric range (open ends
// allowed) or a category set. A node without the attribute never matches.
struct AttributePredicate {
    std::string attribute;
    std::optional<double> min;
    std::optional<double> max;
    std::optional<std::set<std::string>> categories;

    bool matches(const Node& node) const;
};

struct QuerySpec {
    std::vector<std::string> seeds;
    std::optional<std::size_t> depth;  // nullopt: unbounded
    std::optional<std::set<std::string>> types;
    std::vector<AttributePredicate> predicates;
};

class Graph {
public:
    Graph() = default;

    // Validates every invariant; throws ValidationError on violation.
    static Graph build(std::vector<NodeType> node_types,
                       std::vector<std::string> edge_types,
                       std::vector<Node> nodes,
                       std::vector<Edge> edges);

    std::span<const NodeType> node_types() const { return node_types_; }
    std::span<const std::string> edge_types() const { return edge_types_; }
    std::span<const Node> nodes() const { return nodes_; }
    std::span<const Edge> edges() const { return edges_; }

    std::size_t node_count() const { return nodes_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const Node& node(NodeIndex n) const { return nodes_[n]; }
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }
    NodeIndex source(EdgeIndex e) const { return endpoints_[e].first; }
    NodeIndex target(EdgeIndex e) const { return endpoints_[e].second; }
    NodeIndex opposite(EdgeIndex e, NodeIndex n) const {
        return endpoints_[e].first == n ? endpoints_[e].second : endpoints_[e].first;
    }

    std::optional<NodeIndex> find_node(std::string_view id) const;
    NodeIndex require_node(std::string_view id) const;  // throws NotFound
    std::optional<EdgeIndex> find_edge(std::string_view id) const;

    const NodeType* find_type(std::string_view name) const;
    std::size_t type_index(NodeIndex n) const { return node_type_index_[n]; }
    const NodeType& type_of(NodeIndex n) const { return node_types_[node_type_index_[n]]; }

    std::span<const Incidence> incident(NodeIndex n) const {
        return {incidences_.data() + offsets_[n], incidences_.data() + offsets_[n + 1]};
    }
    std::size_t degree(NodeIndex n) const { return offsets_[n + 1] - offsets_[n]; }
    std::size_t degree(std::string_view id) const { return degree(require_node(id)); }

    bool adjacent(NodeIndex a, NodeIndex b) const;

    // All incident edges with the other endpoint, ordered by label then id.
    // With a type filter only neighbors whose type is in the set are kept.
    std::vector<Neighbor> neighbors(std::string_view id,
                                    const std::optional<std::set<std::string>>& type_filter = {}) const;

    FacetedResult search_faceted(std::string_view query) const;

    // Ascending node index (file order).
    std::vector<NodeIndex> structured_query(const QuerySpec& query) const;

private:
    std::vector<NodeType> node_types_;
    std::vector<std::string> edge_types_;
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> node_type_index_;
    std::vector<std::pair<NodeIndex, NodeIndex>> endpoints_;
    std::vector<std::size_t> offsets_{0};
    std::vector<Incidence> incidences_;
    std::map<std::string, NodeIndex, std::less<>> node_by_id_;
    std::map<std::string, EdgeIndex, std::less<>> edge_by_id_;
};

// Dataset directory: schema.json, nodes.jsonl, edges.jsonl.
Graph load_dataset(const std::filesystem::path& dir);
void save_dataset(const Graph& graph, const std::filesystem::path& dir);

}  // namespace grove
