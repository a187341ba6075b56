#include "grove/session.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "grove/error.hpp"

namespace grove {

// ---------------------------------------------------------------------------
// SpanningTree

SpanningTree::SpanningTree(NodeIndex root) : root_(root) { entries_[root] = Entry{}; }

std::optional<TreeLink> SpanningTree::parent(NodeIndex n) const {
    auto it = entries_.find(n);
    if (it == entries_.end()) return std::nullopt;
    return it->second.parent;
}

std::span<const NodeIndex> SpanningTree::children(NodeIndex n) const {
    auto it = entries_.find(n);
    if (it == entries_.end()) return {};
    return it->second.children;
}

int SpanningTree::depth(NodeIndex n) const { return entries_.at(n).depth; }

bool SpanningTree::is_ancestor(NodeIndex ancestor, NodeIndex n) const {
    auto link = parent(n);
    while (link) {
        if (link->parent == ancestor) return true;
        link = parent(link->parent);
    }
    return false;
}

std::vector<NodeIndex> SpanningTree::subtree(NodeIndex n) const {
    std::vector<NodeIndex> out;
    if (!contains(n)) return out;
    std::vector<NodeIndex> stack{n};
    while (!stack.empty()) {
        NodeIndex v = stack.back();
        stack.pop_back();
        out.push_back(v);
        const auto& kids = entries_.at(v).children;
        for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::vector<NodeIndex> SpanningTree::preorder() const { return subtree(root_); }

void SpanningTree::attach(NodeIndex child, TreeLink link) {
    Entry& parent_entry = entries_.at(link.parent);
    parent_entry.children.push_back(child);
    Entry& entry = entries_[child];
    entry.parent = link;
    entry.depth = parent_entry.depth + 1;
}

void SpanningTree::detach_from_parent(NodeIndex n) {
    Entry& entry = entries_.at(n);
    if (!entry.parent) return;
    auto& siblings = entries_.at(entry.parent->parent).children;
    siblings.erase(std::find(siblings.begin(), siblings.end(), n));
    entry.parent.reset();
}

void SpanningTree::reset_depths(NodeIndex from) {
    Entry& start = entries_.at(from);
    start.depth = start.parent ? entries_.at(start.parent->parent).depth + 1 : 0;
    std::vector<NodeIndex> stack{from};
    while (!stack.empty()) {
        NodeIndex v = stack.back();
        stack.pop_back();
        const Entry& entry = entries_.at(v);
        for (NodeIndex c : entry.children) {
            entries_.at(c).depth = entry.depth + 1;
            stack.push_back(c);
        }
    }
}

// ---------------------------------------------------------------------------
// BFS

struct TreeBuilder {
    static SpanningTree bfs(const Session& session, NodeIndex root, const std::function<bool(NodeIndex)>& allowed);
};

SpanningTree TreeBuilder::bfs(const Session& session, NodeIndex root,
                              const std::function<bool(NodeIndex)>& allowed) {
    const Graph& graph = session.graph();
    NodeOrder order(session, session.order());
    SpanningTree tree(root);
    std::vector<char> visited(graph.node_count(), 0);
    visited[root] = 1;
    std::deque<NodeIndex> queue{root};
    std::vector<NodeIndex> candidates;
    std::unordered_map<NodeIndex, EdgeIndex> edge_to;
    while (!queue.empty()) {
        NodeIndex u = queue.front();
        queue.pop_front();
        candidates.clear();
        edge_to.clear();
        for (const auto& inc : graph.incident(u)) {
            NodeIndex o = inc.other;
            if (visited[o] || !session.in_subgraph(o) || !allowed(o)) continue;
            visited[o] = 1;
            candidates.push_back(o);
            edge_to.emplace(o, inc.edge);
        }
        order.sort(candidates);
        for (NodeIndex c : candidates) {
            tree.attach(c, {u, edge_to.at(c)});
            queue.push_back(c);
        }
    }
    return tree;
}

SpanningTree build_spanning_tree(const Session& session, NodeIndex root) {
    if (!session.in_subgraph(root))
        throw PreconditionError("root '" + session.graph().node(root).id + "' is not in the subgraph");
    if (session.type_filtered(root))
        throw PreconditionError("root '" + session.graph().node(root).id + "' has a filtered type");
    return TreeBuilder::bfs(session, root, [](NodeIndex) { return true; });
}

// ---------------------------------------------------------------------------
// Session queries

Session::Session(std::shared_ptr<const Graph> graph)
    : graph_(std::move(graph)),
      member_(graph_->node_count(), 0),
      filtered_type_(graph_->node_types().size(), 0) {}

std::vector<NodeIndex> Session::subgraph_nodes() const {
    std::vector<NodeIndex> out;
    out.reserve(member_count_);
    for (std::size_t i = 0; i < member_.size(); ++i)
        if (member_[i]) out.push_back(static_cast<NodeIndex>(i));
    return out;
}

bool Session::is_induced(EdgeIndex e) const {
    return member_[graph_->source(e)] && member_[graph_->target(e)];
}

std::vector<EdgeIndex> Session::induced_edges() const {
    std::vector<EdgeIndex> out;
    for (NodeIndex n : subgraph_nodes())
        for (const auto& inc : graph_->incident(n))
            if (graph_->source(inc.edge) == n && member_[inc.other]) out.push_back(inc.edge);
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t Session::subgraph_degree(NodeIndex n) const {
    if (!member_[n]) return 0;
    std::size_t d = 0;
    for (const auto& inc : graph_->incident(n))
        if (member_[inc.other]) ++d;
    return d;
}

bool Session::type_filtered(NodeIndex n) const { return filtered_type_[graph_->type_index(n)] != 0; }

const SpanningTree* Session::tree_of(NodeIndex n) const {
    for (const auto& tree : forest_)
        if (tree.contains(n)) return &tree;
    return nullptr;
}

SpanningTree* Session::mutable_tree_of(NodeIndex n) {
    for (auto& tree : forest_)
        if (tree.contains(n)) return &tree;
    return nullptr;
}

std::size_t Session::tree_slot(NodeIndex n) const {
    for (std::size_t i = 0; i < forest_.size(); ++i)
        if (forest_[i].contains(n)) return i;
    return forest_.size();
}

bool Session::is_tree_edge(EdgeIndex e) const {
    NodeIndex s = graph_->source(e);
    NodeIndex t = graph_->target(e);
    const SpanningTree* tree = tree_of(s);
    if (!tree || !tree->contains(t)) return false;
    return tree->parent(s) == TreeLink{t, e} || tree->parent(t) == TreeLink{s, e};
}

std::size_t Session::tree_degree(NodeIndex n) const {
    const SpanningTree* tree = tree_of(n);
    if (!tree) return 0;
    return tree->children(n).size() + (tree->parent(n) ? 1 : 0);
}

std::vector<NodeIndex> Session::pending() const {
    std::vector<NodeIndex> out;
    for (NodeIndex n : subgraph_nodes())
        if (!tree_of(n)) out.push_back(n);
    return out;
}

std::optional<EdgeIndex> Session::induced_edge_between(NodeIndex a, NodeIndex b) const {
    if (!member_[a] || !member_[b]) return std::nullopt;
    for (const auto& inc : graph_->incident(a))
        if (inc.other == b) return inc.edge;
    return std::nullopt;
}

NodeIndex Session::require_member(std::string_view id) const {
    NodeIndex n = graph_->require_node(id);
    if (!member_[n]) throw PreconditionError("node '" + std::string(id) + "' is not in the subgraph");
    return n;
}

// ---------------------------------------------------------------------------
// Internal mutations

void Session::add_member(NodeIndex n) {
    if (member_[n]) return;
    member_[n] = 1;
    ++member_count_;
}

void Session::remove_member(NodeIndex n) {
    if (!member_[n]) return;
    member_[n] = 0;
    --member_count_;
    forget_annotations(n);
    if (selection_ == n) selection_.reset();
}

void Session::forget_annotations(NodeIndex n) {
    const std::string& id = graph_->node(n).id;
    view_.modes.erase(id);
    view_.aggregate.erase(id);
}

void Session::attach_new_member(NodeIndex n) {
    NodeOrder order(*this, order_);
    SpanningTree* best_tree = nullptr;
    std::optional<TreeLink> best;
    for (const auto& inc : graph_->incident(n)) {
        if (!member_[inc.other]) continue;
        SpanningTree* tree = mutable_tree_of(inc.other);
        if (!tree) continue;
        bool better = !best;
        if (!better) {
            int d = tree->depth(inc.other);
            int best_depth = best_tree->depth(best->parent);
            better = d < best_depth || (d == best_depth && order(inc.other, best->parent));
        }
        if (better) {
            best_tree = tree;
            best = TreeLink{inc.other, inc.edge};
        }
    }
    if (best) best_tree->attach(n, *best);
}

void Session::install_tree(NodeIndex root, std::optional<std::size_t> slot) {
    SpanningTree tree = build_spanning_tree(*this, root);
    // trees reached by the BFS are absorbed
    std::vector<char> touched(forest_.size(), 0);
    for (std::size_t i = 0; i < forest_.size(); ++i)
        touched[i] = std::any_of(forest_[i].entries_.begin(), forest_[i].entries_.end(),
                                 [&](const auto& entry) { return tree.contains(entry.first); });
    std::vector<SpanningTree> next;
    next.reserve(forest_.size() + 1);
    bool placed = false;
    for (std::size_t i = 0; i < forest_.size(); ++i) {
        if (slot && *slot == i) {
            next.push_back(std::move(tree));
            placed = true;
        } else if (!touched[i]) {
            next.push_back(std::move(forest_[i]));
        }
    }
    if (!placed) next.push_back(std::move(tree));
    forest_ = std::move(next);
}

void Session::move_under(NodeIndex n, NodeIndex parent, EdgeIndex edge) {
    SpanningTree* target = mutable_tree_of(parent);
    SpanningTree* source = mutable_tree_of(n);
    if (!source) {
        target->attach(n, {parent, edge});
        return;
    }
    if (source == target) {
        target->detach_from_parent(n);
        target->entries_.at(parent).children.push_back(n);
        target->entries_.at(n).parent = TreeLink{parent, edge};
        target->reset_depths(n);
        return;
    }
    source->detach_from_parent(n);
    for (NodeIndex v : source->subtree(n)) {
        target->entries_[v] = std::move(source->entries_.at(v));
        source->entries_.erase(v);
    }
    target->entries_.at(parent).children.push_back(n);
    target->entries_.at(n).parent = TreeLink{parent, edge};
    target->reset_depths(n);
    drop_empty_trees();
}

void Session::evert(NodeIndex n) {
    SpanningTree* tree = mutable_tree_of(n);
    struct Step {
        NodeIndex child;
        TreeLink link;
    };
    std::vector<Step> chain;
    NodeIndex v = n;
    while (auto link = tree->parent(v)) {
        chain.push_back({v, *link});
        v = link->parent;
    }
    for (const Step& step : chain) tree->detach_from_parent(step.child);
    for (const Step& step : chain) {
        tree->entries_.at(step.link.parent).parent = TreeLink{step.child, step.link.edge};
        tree->entries_.at(step.child).children.push_back(step.link.parent);
    }
    tree->root_ = n;
    tree->reset_depths(n);
}

void Session::drop_empty_trees() {
    std::erase_if(forest_, [](const SpanningTree& t) { return t.entries_.empty(); });
}

// ---------------------------------------------------------------------------
// Exploration operations

void Session::add_root(std::optional<std::string_view> id) {
    NodeIndex root;
    if (id) {
        root = graph_->require_node(*id);
        if (type_filtered(root)) throw PreconditionError("node '" + std::string(*id) + "' has a filtered type");
        if (tree_of(root)) {
            install_tree(root, tree_slot(root));
            bump();
            return;
        }
        add_member(root);
    } else {
        std::vector<NodeIndex> candidates = pending();
        if (candidates.empty()) {
            throw PreconditionError(member_count_ == 0 ? "cannot choose a root in an empty subgraph"
                                                       : "every subgraph node already belongs to a tree");
        }
        root = *std::min_element(candidates.begin(), candidates.end(), [&](NodeIndex a, NodeIndex b) {
            std::size_t da = subgraph_degree(a);
            std::size_t db = subgraph_degree(b);
            if (da != db) return da > db;
            return label_less(*graph_, a, b);
        });
    }
    // a new root only claims nodes that are not yet in a tree
    forest_.push_back(TreeBuilder::bfs(*this, root, [this](NodeIndex n) { return tree_of(n) == nullptr; }));
    bump();
}

void Session::add_node(std::string_view id, bool with_neighbors) {
    NodeIndex n = graph_->require_node(id);
    if (type_filtered(n)) throw PreconditionError("node '" + std::string(id) + "' has a filtered type");
    if (!member_[n]) {
        add_member(n);
        attach_new_member(n);
    }
    if (with_neighbors) {
        std::vector<NodeIndex> fresh;
        for (const auto& inc : graph_->incident(n)) {
            NodeIndex o = inc.other;
            if (member_[o] || type_filtered(o)) continue;
            if (std::find(fresh.begin(), fresh.end(), o) == fresh.end()) fresh.push_back(o);
        }
        NodeOrder(*this, order_).sort(fresh);
        for (NodeIndex o : fresh) {
            add_member(o);
            attach_new_member(o);
        }
    }
    bump();
}

void Session::expand_missing_neighbors(std::string_view id) {
    NodeIndex n = require_member(id);
    SpanningTree* tree = mutable_tree_of(n);
    if (!tree) throw PreconditionError("node '" + std::string(id) + "' is not in a tree");
    std::vector<NodeIndex> missing;
    std::unordered_map<NodeIndex, EdgeIndex> edge_to;
    for (const auto& inc : graph_->incident(n)) {
        NodeIndex o = inc.other;
        if (member_[o] || type_filtered(o) || edge_to.count(o)) continue;
        edge_to.emplace(o, inc.edge);
        missing.push_back(o);
    }
    NodeOrder(*this, order_).sort(missing);
    for (NodeIndex o : missing) {
        add_member(o);
        tree->attach(o, {n, edge_to.at(o)});
    }
    bump();
}

void Session::make_root(std::string_view id) {
    NodeIndex n = require_member(id);
    std::size_t slot = tree_slot(n);
    install_tree(n, slot < forest_.size() ? std::optional<std::size_t>(slot) : std::nullopt);
    bump();
}

void Session::gather_children(std::string_view id) {
    NodeIndex n = require_member(id);
    const SpanningTree* tree = tree_of(n);
    if (!tree) throw PreconditionError("node '" + std::string(id) + "' is not in a tree");
    std::vector<NodeIndex> neighbors;
    std::unordered_map<NodeIndex, EdgeIndex> edge_to;
    for (const auto& inc : graph_->incident(n)) {
        NodeIndex o = inc.other;
        if (!member_[o] || edge_to.count(o)) continue;
        edge_to.emplace(o, inc.edge);
        if (tree->is_ancestor(o, n)) continue;
        neighbors.push_back(o);
    }
    NodeOrder(*this, order_).sort(neighbors);
    for (NodeIndex o : neighbors) {
        const SpanningTree* current = tree_of(n);
        auto link = current->parent(o);
        if (link && link->parent == n) continue;
        move_under(o, n, edge_to.at(o));
    }
    bump();
}

void Session::remove_branch(std::string_view id) {
    NodeIndex n = require_member(id);
    std::size_t slot = tree_slot(n);
    if (slot == forest_.size()) throw PreconditionError("node '" + std::string(id) + "' is not in a tree");
    SpanningTree& tree = forest_[slot];
    std::vector<NodeIndex> doomed = tree.subtree(n);
    if (n == tree.root()) {
        forest_.erase(forest_.begin() + static_cast<std::ptrdiff_t>(slot));
    } else {
        tree.detach_from_parent(n);
        for (NodeIndex v : doomed) tree.entries_.erase(v);
    }
    for (NodeIndex v : doomed) remove_member(v);
    bump();
}

void Session::reattach_branch(std::string_view id, std::string_view new_parent) {
    NodeIndex n = require_member(id);
    NodeIndex p = require_member(new_parent);
    const SpanningTree* source = tree_of(n);
    const SpanningTree* target = tree_of(p);
    if (!source) throw PreconditionError("node '" + std::string(id) + "' is not in a tree");
    if (!target) throw PreconditionError("node '" + std::string(new_parent) + "' is not in a tree");
    auto edge = induced_edge_between(n, p);
    if (!edge)
        throw PreconditionError("no subgraph edge between '" + std::string(id) + "' and '" + std::string(new_parent) +
                                "'");
    if (n == p || (source == target && source->is_ancestor(n, p)))
        throw CycleError("'" + std::string(new_parent) + "' lies in the subtree of '" + std::string(id) + "'");
    auto link = source->parent(n);
    if (!(link && link->parent == p)) move_under(n, p, *edge);
    bump();
}

void Session::set_type_filters(std::set<std::string> excluded) {
    for (const auto& name : excluded)
        if (!graph_->find_type(name)) throw PreconditionError("unknown node type '" + name + "'");
    type_filters_ = std::move(excluded);
    for (std::size_t i = 0; i < graph_->node_types().size(); ++i)
        filtered_type_[i] = type_filters_.count(graph_->node_types()[i].name) ? 1 : 0;

    std::vector<char> doomed(graph_->node_count(), 0);
    bool any = false;
    for (NodeIndex n : subgraph_nodes()) {
        if (type_filtered(n)) {
            doomed[n] = 1;
            any = true;
        }
    }
    if (!any) {
        bump();
        return;
    }

    // Trees that lose a node are regrown by BFS from their old root (or the
    // first survivor in old breadth-first order); survivors cut off from it
    // root further trees in the same slot.
    struct Affected {
        std::size_t position;
        std::vector<NodeIndex> survivors;
    };
    std::vector<Affected> affected;
    std::vector<SpanningTree> kept;
    std::size_t position = 0;
    for (auto& tree : forest_) {
        std::vector<NodeIndex> nodes = tree.preorder();
        bool hit = std::any_of(nodes.begin(), nodes.end(), [&](NodeIndex v) { return doomed[v] != 0; });
        if (!hit) {
            kept.push_back(std::move(tree));
            ++position;
            continue;
        }
        std::stable_sort(nodes.begin(), nodes.end(),
                         [&](NodeIndex a, NodeIndex b) { return tree.depth(a) < tree.depth(b); });
        std::erase_if(nodes, [&](NodeIndex v) { return doomed[v] != 0; });
        affected.push_back({position, std::move(nodes)});
    }
    forest_ = std::move(kept);
    for (NodeIndex n : subgraph_nodes())
        if (doomed[n]) remove_member(n);

    std::size_t inserted = 0;
    for (const auto& a : affected) {
        std::size_t at = a.position + inserted;
        for (NodeIndex v : a.survivors) {
            if (tree_of(v)) continue;
            SpanningTree grown = TreeBuilder::bfs(*this, v, [this](NodeIndex x) { return tree_of(x) == nullptr; });
            forest_.insert(forest_.begin() + static_cast<std::ptrdiff_t>(at), std::move(grown));
            ++at;
            ++inserted;
        }
    }
    bump();
}

void Session::set_order(OrderSpec order) {
    if (order.key == OrderKey::attribute) {
        bool known = std::any_of(graph_->node_types().begin(), graph_->node_types().end(),
                                 [&](const NodeType& t) { return t.find_attribute(order.attribute) != nullptr; });
        if (!known) throw PreconditionError("unknown attribute '" + order.attribute + "'");
    }
    order_ = std::move(order);
    bump();
}

void Session::select(std::optional<std::string_view> id) {
    if (id)
        selection_ = require_member(*id);
    else
        selection_.reset();
    bump();
}

// ---------------------------------------------------------------------------
// View configuration

void Session::set_branch_mode(std::string_view id, BranchMode mode) {
    require_member(id);
    view_.modes[std::string(id)] = mode;
    bump();
}

void Session::set_aggregation(std::string_view id, bool aggregate) {
    require_member(id);
    view_.aggregate[std::string(id)] = aggregate;
    bump();
}

void Session::set_doi(std::optional<DOIFunction> doi) {
    if (doi) {
        bool known = std::any_of(graph_->node_types().begin(), graph_->node_types().end(), [&](const NodeType& t) {
            return t.find_attribute(doi->predicate.attribute) != nullptr;
        });
        if (!known) throw PreconditionError("unknown attribute '" + doi->predicate.attribute + "'");
        for (const auto& type : doi->types)
            if (!graph_->find_type(type)) throw PreconditionError("unknown node type '" + type + "'");
        if (doi->predicate.min && doi->predicate.max && *doi->predicate.min > *doi->predicate.max)
            throw PreconditionError("degree-of-interest range has min > max");
    }
    view_.doi = std::move(doi);
    bump();
}

void Session::set_sort(OrderSpec sort) {
    if (sort.key == OrderKey::attribute) {
        bool known = std::any_of(graph_->node_types().begin(), graph_->node_types().end(),
                                 [&](const NodeType& t) { return t.find_attribute(sort.attribute) != nullptr; });
        if (!known) throw PreconditionError("unknown attribute '" + sort.attribute + "'");
    }
    view_.sort = std::move(sort);
    bump();
}

void Session::path_sort(const std::vector<std::string>& path) {
    if (path.empty()) throw PreconditionError("path is empty");
    std::vector<NodeIndex> nodes;
    for (const auto& id : path) {
        NodeIndex n = require_member(id);
        if (std::find(nodes.begin(), nodes.end(), n) != nodes.end())
            throw PreconditionError("path visits '" + id + "' twice");
        nodes.push_back(n);
    }
    std::vector<EdgeIndex> steps;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        auto edge = induced_edge_between(nodes[i - 1], nodes[i]);
        if (!edge) throw PreconditionError("broken path: no subgraph edge " + path[i - 1] + "-" + path[i]);
        steps.push_back(*edge);
    }
    if (nodes.size() == 1) {
        view_.pinned_path.clear();
        bump();
        return;
    }

    if (!tree_of(nodes[0])) install_tree(nodes[0], std::nullopt);
    const SpanningTree* tree = tree_of(nodes[0]);
    bool upward = std::any_of(nodes.begin() + 1, nodes.end(), [&](NodeIndex v) {
        return tree->contains(v) && tree->is_ancestor(v, nodes[0]);
    });
    if (upward) evert(nodes[0]);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
        const SpanningTree* current = tree_of(nodes[i]);
        auto link = current ? current->parent(nodes[i]) : std::nullopt;
        if (link && link->parent == nodes[i - 1]) continue;
        move_under(nodes[i], nodes[i - 1], steps[i - 1]);
    }
    view_.pinned_path = path;
    bump();
}

void Session::set_matrix_columns(std::optional<std::vector<std::string>> columns) {
    if (columns)
        for (const auto& id : *columns) graph_->require_node(id);
    view_.matrix_columns = std::move(columns);
    bump();
}

void Session::set_attribute_columns(std::optional<std::vector<std::string>> columns) {
    if (columns) {
        for (const auto& name : *columns) {
            bool known = std::any_of(graph_->node_types().begin(), graph_->node_types().end(),
                                     [&](const NodeType& t) { return t.find_attribute(name) != nullptr; });
            if (!known) throw PreconditionError("unknown attribute '" + name + "'");
        }
    }
    view_.attribute_columns = std::move(columns);
    bump();
}

}  // namespace grove
