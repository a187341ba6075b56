#include "grove/graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>

#include "grove/error.hpp"

namespace grove {

namespace {

std::string lowercase(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool kind_accepts(AttributeKind kind, const AttributeValue& value) {
    switch (kind) {
        case AttributeKind::numeric:
            return std::holds_alternative<double>(value);
        case AttributeKind::ordinal:
        case AttributeKind::nominal:
        case AttributeKind::label:
            return std::holds_alternative<std::string>(value);
        case AttributeKind::set:
            return std::holds_alternative<std::vector<std::string>>(value);
    }
    return false;
}

void validate_schema(const std::vector<NodeType>& types) {
    std::set<std::string, std::less<>> type_names;
    for (const auto& type : types) {
        if (!type_names.insert(type.name).second)
            throw ValidationError("duplicate node type '" + type.name + "'", {type.name});
        std::set<std::string, std::less<>> attribute_names;
        for (const auto& def : type.attributes) {
            if (!attribute_names.insert(def.name).second)
                throw ValidationError("duplicate attribute '" + def.name + "' in type '" + type.name + "'",
                                      {def.name});
            if (def.min && def.max && *def.min > *def.max)
                throw ValidationError("attribute '" + def.name + "' has min > max", {def.name});
            std::set<std::string, std::less<>> categories(def.categories.begin(), def.categories.end());
            if (categories.size() != def.categories.size())
                throw ValidationError("attribute '" + def.name + "' has repeated categories", {def.name});
        }
    }
}

}  // namespace

std::string_view to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::numeric: return "numeric";
        case AttributeKind::ordinal: return "ordinal";
        case AttributeKind::nominal: return "nominal";
        case AttributeKind::set: return "set";
        case AttributeKind::label: return "label";
    }
    return "numeric";
}

AttributeKind parse_attribute_kind(std::string_view text) {
    if (text == "numeric") return AttributeKind::numeric;
    if (text == "ordinal") return AttributeKind::ordinal;
    if (text == "nominal") return AttributeKind::nominal;
    if (text == "set") return AttributeKind::set;
    if (text == "label") return AttributeKind::label;
    throw ValidationError("unknown attribute kind '" + std::string(text) + "'");
}

std::optional<std::size_t> AttributeDef::category_rank(std::string_view category) const {
    auto it = std::find(categories.begin(), categories.end(), category);
    if (it == categories.end()) return std::nullopt;
    return static_cast<std::size_t>(it - categories.begin());
}

const AttributeDef* NodeType::find_attribute(std::string_view attribute) const {
    for (const auto& def : attributes)
        if (def.name == attribute) return &def;
    return nullptr;
}

const AttributeValue* Node::attribute(std::string_view name) const {
    auto it = attributes.find(name);
    return it == attributes.end() ? nullptr : &it->second;
}

bool AttributePredicate::matches(const Node& node) const {
    const AttributeValue* value = node.attribute(attribute);
    if (!value) return false;
    if (const auto* number = std::get_if<double>(value)) {
        if (categories) return false;
        if (min && *number < *min) return false;
        if (max && *number > *max) return false;
        return true;
    }
    if (!categories) return false;
    if (const auto* text = std::get_if<std::string>(value)) return categories->count(*text) > 0;
    const auto& items = std::get<std::vector<std::string>>(*value);
    return std::any_of(items.begin(), items.end(),
                       [&](const std::string& item) { return categories->count(item) > 0; });
}

Graph Graph::build(std::vector<NodeType> node_types,
                   std::vector<std::string> edge_types,
                   std::vector<Node> nodes,
                   std::vector<Edge> edges) {
    validate_schema(node_types);

    Graph g;
    g.node_types_ = std::move(node_types);
    g.edge_types_ = std::move(edge_types);
    g.nodes_ = std::move(nodes);
    g.edges_ = std::move(edges);

    std::map<std::string, std::size_t, std::less<>> type_by_name;
    for (std::size_t i = 0; i < g.node_types_.size(); ++i) type_by_name.emplace(g.node_types_[i].name, i);

    std::vector<std::string> duplicates;
    g.node_type_index_.reserve(g.nodes_.size());
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
        const Node& node = g.nodes_[i];
        if (!g.node_by_id_.emplace(node.id, static_cast<NodeIndex>(i)).second) duplicates.push_back(node.id);
        auto type_it = type_by_name.find(node.type);
        if (type_it == type_by_name.end())
            throw ValidationError("node '" + node.id + "' has unknown type '" + node.type + "'", {node.id});
        g.node_type_index_.push_back(type_it->second);
        const NodeType& type = g.node_types_[type_it->second];
        for (const auto& [name, value] : node.attributes) {
            const AttributeDef* def = type.find_attribute(name);
            if (!def)
                throw ValidationError("node '" + node.id + "' has attribute '" + name + "' not in type '" +
                                          type.name + "'",
                                      {node.id});
            if (!kind_accepts(def->kind, value))
                throw ValidationError("node '" + node.id + "' attribute '" + name + "' does not match kind " +
                                          std::string(to_string(def->kind)),
                                      {node.id});
            if ((def->kind == AttributeKind::ordinal || def->kind == AttributeKind::nominal) &&
                !def->categories.empty() && !def->category_rank(std::get<std::string>(value)))
                throw ValidationError("node '" + node.id + "' attribute '" + name + "' has undeclared category",
                                      {node.id});
        }
    }
    if (!duplicates.empty()) throw ValidationError("duplicate node ids", duplicates);

    std::set<std::string, std::less<>> known_edge_types(g.edge_types_.begin(), g.edge_types_.end());
    std::vector<std::string> dangling;
    std::string dangling_detail;
    std::vector<std::string> loops;
    g.endpoints_.reserve(g.edges_.size());
    for (std::size_t i = 0; i < g.edges_.size(); ++i) {
        const Edge& edge = g.edges_[i];
        if (!g.edge_by_id_.emplace(edge.id, static_cast<EdgeIndex>(i)).second) duplicates.push_back(edge.id);
        auto source = g.find_node(edge.source);
        auto target = g.find_node(edge.target);
        if (!source || !target) {
            dangling.push_back(edge.id);
            dangling_detail += " " + edge.id + " (" + (source ? edge.target : edge.source) + ")";
            continue;
        }
        if (*source == *target) loops.push_back(edge.id);
        if (edge.type && !known_edge_types.empty() && !known_edge_types.count(*edge.type))
            throw ValidationError("edge '" + edge.id + "' has unknown type '" + *edge.type + "'", {edge.id});
        g.endpoints_.emplace_back(*source, *target);
    }
    if (!dangling.empty()) {
        throw ValidationError("edges reference missing nodes:" + dangling_detail, dangling);
    }
    if (!duplicates.empty()) throw ValidationError("duplicate edge ids", duplicates);
    if (!loops.empty()) throw ValidationError("self-loops are not allowed", loops);

    std::vector<std::size_t> counts(g.nodes_.size() + 1, 0);
    for (const auto& [s, t] : g.endpoints_) {
        ++counts[s + 1];
        ++counts[t + 1];
    }
    g.offsets_.assign(g.nodes_.size() + 1, 0);
    for (std::size_t i = 1; i <= g.nodes_.size(); ++i) g.offsets_[i] = g.offsets_[i - 1] + counts[i];
    g.incidences_.resize(g.offsets_.back());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t e = 0; e < g.endpoints_.size(); ++e) {
        auto [s, t] = g.endpoints_[e];
        g.incidences_[cursor[s]++] = {t, static_cast<EdgeIndex>(e)};
        g.incidences_[cursor[t]++] = {s, static_cast<EdgeIndex>(e)};
    }
    return g;
}

std::optional<NodeIndex> Graph::find_node(std::string_view id) const {
    auto it = node_by_id_.find(id);
    if (it == node_by_id_.end()) return std::nullopt;
    return it->second;
}

NodeIndex Graph::require_node(std::string_view id) const {
    auto n = find_node(id);
    if (!n) throw NotFound("unknown node '" + std::string(id) + "'");
    return *n;
}

std::optional<EdgeIndex> Graph::find_edge(std::string_view id) const {
    auto it = edge_by_id_.find(id);
    if (it == edge_by_id_.end()) return std::nullopt;
    return it->second;
}

const NodeType* Graph::find_type(std::string_view name) const {
    for (const auto& type : node_types_)
        if (type.name == name) return &type;
    return nullptr;
}

bool Graph::adjacent(NodeIndex a, NodeIndex b) const {
    // scan the smaller incidence list
    if (degree(b) < degree(a)) std::swap(a, b);
    for (const auto& inc : incident(a))
        if (inc.other == b) return true;
    return false;
}

std::vector<Neighbor> Graph::neighbors(std::string_view id,
                                       const std::optional<std::set<std::string>>& type_filter) const {
    NodeIndex n = require_node(id);
    std::vector<Incidence> kept;
    for (const auto& inc : incident(n)) {
        if (type_filter && !type_filter->count(nodes_[inc.other].type)) continue;
        kept.push_back(inc);
    }
    std::stable_sort(kept.begin(), kept.end(), [&](const Incidence& a, const Incidence& b) {
        const Node& na = nodes_[a.other];
        const Node& nb = nodes_[b.other];
        if (na.label != nb.label) return na.label < nb.label;
        if (na.id != nb.id) return na.id < nb.id;
        return edges_[a.edge].id < edges_[b.edge].id;
    });
    std::vector<Neighbor> out;
    out.reserve(kept.size());
    for (const auto& inc : kept) out.push_back({nodes_[inc.other].id, edges_[inc.edge].id});
    return out;
}

FacetedResult Graph::search_faceted(std::string_view query) const {
    FacetedResult facets;
    if (query.empty()) return facets;
    const std::string needle = lowercase(query);
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const Node& node = nodes_[i];
        if (lowercase(node.label).find(needle) == std::string::npos) continue;
        facets[node.type].push_back({node.id, node.label, degree(static_cast<NodeIndex>(i))});
    }
    for (auto& [type, hits] : facets) {
        std::stable_sort(hits.begin(), hits.end(), [](const SearchHit& a, const SearchHit& b) {
            if (a.degree != b.degree) return a.degree > b.degree;
            if (a.label != b.label) return a.label < b.label;
            return a.node_id < b.node_id;
        });
    }
    return facets;
}

std::vector<NodeIndex> Graph::structured_query(const QuerySpec& query) const {
    std::vector<std::size_t> hops(nodes_.size(), SIZE_MAX);
    std::deque<NodeIndex> frontier;
    std::vector<char> is_seed(nodes_.size(), 0);
    for (const auto& id : query.seeds) {
        NodeIndex n = require_node(id);
        is_seed[n] = 1;
        if (hops[n] != 0) {
            hops[n] = 0;
            frontier.push_back(n);
        }
    }
    while (!frontier.empty()) {
        NodeIndex n = frontier.front();
        frontier.pop_front();
        if (query.depth && hops[n] >= *query.depth) continue;
        for (const auto& inc : incident(n)) {
            if (hops[inc.other] != SIZE_MAX) continue;
            hops[inc.other] = hops[n] + 1;
            frontier.push_back(inc.other);
        }
    }
    std::vector<NodeIndex> out;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (hops[i] == SIZE_MAX) continue;
        const Node& node = nodes_[i];
        bool keep = is_seed[i] != 0;
        if (!keep) {
            keep = !query.types || query.types->count(node.type) > 0;
            for (const auto& predicate : query.predicates) keep = keep && predicate.matches(node);
        }
        if (keep) out.push_back(static_cast<NodeIndex>(i));
    }
    return out;
}

}  // namespace grove
