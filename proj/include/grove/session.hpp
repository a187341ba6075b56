#pragma once
// Mutable exploration state over an immutable graph: the subgraph, its
// spanning forest, type filters and the view configuration.
//
// Invariants kept by every mutation:
//  - every tree node is a subgraph member; a member lies in at most one tree
//  - tree edges are induced subgraph edges; depth(child) = depth(parent) + 1
//  - no member has a filtered type
//  - revision increases by one per applied mutation
//
// Members that belong to no tree are "pending" (added without a reachable
// tree node); they are not laid out until rooted or attached.

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "grove/graph.hpp"
#include "grove/order.hpp"
#include "grove/view.hpp"

namespace grove {

struct TreeLink {
    NodeIndex parent;
    EdgeIndex edge;

    bool operator==(const TreeLink&) const = default;
};

class SpanningTree {
public:
    explicit SpanningTree(NodeIndex root);

    NodeIndex root() const { return root_; }
    bool contains(NodeIndex n) const { return entries_.count(n) > 0; }
    std::size_t size() const { return entries_.size(); }

    std::optional<TreeLink> parent(NodeIndex n) const;
    std::span<const NodeIndex> children(NodeIndex n) const;
    int depth(NodeIndex n) const;
    bool is_ancestor(NodeIndex ancestor, NodeIndex n) const;

    // Root first, children in stored order.
    std::vector<NodeIndex> preorder() const;
    std::vector<NodeIndex> subtree(NodeIndex n) const;

private:
    friend class Session;
    friend struct TreeBuilder;

    struct Entry {
        std::optional<TreeLink> parent;
        std::vector<NodeIndex> children;
        int depth = 0;
    };

    void attach(NodeIndex child, TreeLink link);
    void detach_from_parent(NodeIndex n);
    void reset_depths(NodeIndex from);

    NodeIndex root_;
    std::unordered_map<NodeIndex, Entry> entries_;
};

class Session {
public:
    explicit Session(std::shared_ptr<const Graph> graph);

    const Graph& graph() const { return *graph_; }
    const std::shared_ptr<const Graph>& graph_ptr() const { return graph_; }
    std::uint64_t revision() const { return revision_; }

    // -- subgraph ---------------------------------------------------------
    bool in_subgraph(NodeIndex n) const { return member_[n] != 0; }
    std::size_t subgraph_size() const { return member_count_; }
    std::vector<NodeIndex> subgraph_nodes() const;
    bool is_induced(EdgeIndex e) const;
    std::vector<EdgeIndex> induced_edges() const;
    std::size_t subgraph_degree(NodeIndex n) const;
    bool type_filtered(NodeIndex n) const;
    const std::set<std::string>& type_filters() const { return type_filters_; }

    // -- forest -----------------------------------------------------------
    const std::vector<SpanningTree>& forest() const { return forest_; }
    const SpanningTree* tree_of(NodeIndex n) const;
    bool is_tree_edge(EdgeIndex e) const;
    std::size_t tree_degree(NodeIndex n) const;
    std::vector<NodeIndex> pending() const;

    const OrderSpec& order() const { return order_; }
    std::optional<NodeIndex> selection() const { return selection_; }
    const LayoutConfig& view() const { return view_; }

    // -- exploration ------------------------------------------------------
    // Roots a new tree at `id` (added to the subgraph if absent), or at the
    // highest-degree pending member when no id is given.
    void add_root(std::optional<std::string_view> id);
    void add_node(std::string_view id, bool with_neighbors);
    void expand_missing_neighbors(std::string_view id);
    void make_root(std::string_view id);
    void gather_children(std::string_view id);
    void remove_branch(std::string_view id);
    void reattach_branch(std::string_view id, std::string_view new_parent);
    void set_type_filters(std::set<std::string> excluded);
    void set_order(OrderSpec order);
    void select(std::optional<std::string_view> id);

    // -- view -------------------------------------------------------------
    void set_branch_mode(std::string_view id, BranchMode mode);
    void set_aggregation(std::string_view id, bool aggregate);
    void set_doi(std::optional<DOIFunction> doi);
    void set_sort(OrderSpec sort);
    // Reshapes the forest so the path is a parent-to-child chain, then pins
    // it so layouts emit its nodes on consecutive rows.
    void path_sort(const std::vector<std::string>& path);
    void set_matrix_columns(std::optional<std::vector<std::string>> columns);
    void set_attribute_columns(std::optional<std::vector<std::string>> columns);

    // Versioned state document; from_state(to_state()) reproduces the session.
    nlohmann::json to_state() const;
    static Session from_state(std::shared_ptr<const Graph> graph, const nlohmann::json& state);

private:
    friend SpanningTree build_spanning_tree(const Session& session, NodeIndex root);

    NodeIndex require_member(std::string_view id) const;
    SpanningTree* mutable_tree_of(NodeIndex n);
    std::size_t tree_slot(NodeIndex n) const;
    std::optional<EdgeIndex> induced_edge_between(NodeIndex a, NodeIndex b) const;

    void add_member(NodeIndex n);
    void remove_member(NodeIndex n);
    void attach_new_member(NodeIndex n);
    // Replaces (or appends) the tree in `slot` with a BFS tree from `root`,
    // absorbing every tree it reaches.
    void install_tree(NodeIndex root, std::optional<std::size_t> slot);
    // Moves the subtree of `n` (or a pending node) under `parent` via `edge`.
    void move_under(NodeIndex n, NodeIndex parent, EdgeIndex edge);
    void evert(NodeIndex n);
    void drop_empty_trees();
    void forget_annotations(NodeIndex n);
    void bump() { ++revision_; }

    std::shared_ptr<const Graph> graph_;
    std::uint64_t revision_ = 0;
    std::vector<char> member_;
    std::size_t member_count_ = 0;
    std::set<std::string> type_filters_;
    std::vector<char> filtered_type_;
    std::vector<SpanningTree> forest_;
    OrderSpec order_;
    std::optional<NodeIndex> selection_;
    LayoutConfig view_;
};

// BFS over the induced subgraph from `root`; at each dequeued node the
// unvisited neighbors become its children in the session's order. Nodes of
// other trees are visited like any member.
SpanningTree build_spanning_tree(const Session& session, NodeIndex root);

}  // namespace grove
