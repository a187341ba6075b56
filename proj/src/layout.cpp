#include "grove/layout.hpp"

#include <algorithm>
#include <unordered_set>

namespace grove {

std::vector<NodeIndex> Row::nodes() const {
    if (kind == RowKind::aggregate) return members;
    return {node};
}

std::optional<std::size_t> LayoutResult::find_row(NodeIndex n) const {
    auto it = row_of.find(n);
    if (it == row_of.end()) return std::nullopt;
    return it->second;
}

std::vector<NodeIndex> active_pinned_path(const Session& session, const LayoutConfig& config) {
    const auto& ids = config.pinned_path;
    if (ids.size() < 2) return {};
    std::vector<NodeIndex> path;
    const SpanningTree* tree = nullptr;
    for (const auto& id : ids) {
        auto n = session.graph().find_node(id);
        if (!n || !session.in_subgraph(*n)) return {};
        const SpanningTree* t = session.tree_of(*n);
        if (!t || (tree && t != tree)) return {};
        tree = t;
        if (!path.empty()) {
            auto link = tree->parent(*n);
            if (!link || link->parent != path.back()) return {};
        }
        path.push_back(*n);
    }
    return path;
}

namespace {

struct Annotations {
    std::unordered_map<NodeIndex, BranchMode> modes;
    std::unordered_map<NodeIndex, bool> aggregate;
    std::unordered_set<NodeIndex> spine;
    std::unordered_map<NodeIndex, NodeIndex> path_next;
};

Annotations resolve(const Session& session, const LayoutConfig& config) {
    Annotations a;
    const Graph& graph = session.graph();
    for (const auto& [id, mode] : config.modes)
        if (auto n = graph.find_node(id)) a.modes.emplace(*n, mode);
    for (const auto& [id, flag] : config.aggregate)
        if (auto n = graph.find_node(id)) a.aggregate.emplace(*n, flag);
    std::vector<NodeIndex> path = active_pinned_path(session, config);
    if (!path.empty()) {
        const SpanningTree* tree = session.tree_of(path.front());
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i + 1 < path.size()) a.path_next.emplace(path[i], path[i + 1]);
            for (std::optional<NodeIndex> v = path[i]; v && a.spine.insert(*v).second;) {
                auto link = tree->parent(*v);
                v = link ? std::optional<NodeIndex>(link->parent) : std::nullopt;
            }
        }
    }
    return a;
}

template <typename Map>
auto nearest(const SpanningTree& tree, const Map& annotations, NodeIndex n)
    -> std::optional<typename Map::mapped_type> {
    if (annotations.empty()) return std::nullopt;
    for (std::optional<NodeIndex> v = n; v;) {
        if (auto it = annotations.find(*v); it != annotations.end()) return it->second;
        auto link = tree.parent(*v);
        v = link ? std::optional<NodeIndex>(link->parent) : std::nullopt;
    }
    return std::nullopt;
}

BranchMode mode_of(const SpanningTree& tree, const Annotations& a, NodeIndex n) {
    if (a.spine.count(n)) return BranchMode::tree;
    return nearest(tree, a.modes, n).value_or(BranchMode::tree);
}

class Emitter {
public:
    Emitter(const Session& session, const SpanningTree& tree, std::size_t tree_index, const Annotations& annotations,
            const OrderSpec& sort, std::vector<Row>& rows)
        : tree_(tree), tree_index_(tree_index), a_(annotations), order_(session, sort), rows_(rows) {}

    void emit(NodeIndex n) {
        if (mode_of(tree_, a_, n) == BranchMode::level)
            level_mode(n);
        else
            tree_mode(n);
    }

private:
    bool aggregated(NodeIndex n) const { return nearest(tree_, a_.aggregate, n).value_or(false); }

    void push_individual(NodeIndex n, BranchMode mode) {
        Row row;
        row.node = n;
        row.depth = tree_.depth(n);
        row.mode = mode;
        row.tree = tree_index_;
        rows_.push_back(std::move(row));
    }

    void push_aggregate(NodeIndex owner, std::vector<NodeIndex> members, int depth, BranchMode mode) {
        Row row;
        row.kind = RowKind::aggregate;
        row.node = owner;
        row.members = std::move(members);
        row.depth = depth;
        row.mode = mode;
        row.tree = tree_index_;
        rows_.push_back(std::move(row));
    }

    std::vector<NodeIndex> sorted_children(NodeIndex n) const {
        auto kids = tree_.children(n);
        std::vector<NodeIndex> out(kids.begin(), kids.end());
        order_.sort(out);
        if (auto it = a_.path_next.find(n); it != a_.path_next.end()) {
            auto pos = std::find(out.begin(), out.end(), it->second);
            std::rotate(out.begin(), pos, pos + 1);
        }
        return out;
    }

    void tree_mode(NodeIndex n) {
        push_individual(n, BranchMode::tree);
        const bool collapse = aggregated(n);
        std::vector<NodeIndex> leaves;
        for (NodeIndex c : sorted_children(n)) {
            if (collapse && tree_.children(c).empty() && !a_.spine.count(c))
                leaves.push_back(c);
            else
                emit(c);
        }
        if (!leaves.empty()) push_aggregate(n, std::move(leaves), tree_.depth(n) + 1, BranchMode::tree);
    }

    void level_mode(NodeIndex root) {
        push_individual(root, BranchMode::level);
        const bool collapse = aggregated(root);
        std::vector<NodeIndex> level{root};
        for (int depth = tree_.depth(root) + 1;; ++depth) {
            std::vector<NodeIndex> next;
            for (NodeIndex v : level) {
                auto kids = tree_.children(v);
                next.insert(next.end(), kids.begin(), kids.end());
            }
            if (next.empty()) break;
            order_.sort(next);
            if (collapse) {
                push_aggregate(root, next, depth, BranchMode::level);
            } else {
                for (NodeIndex v : next) push_individual(v, BranchMode::level);
            }
            level = std::move(next);
        }
    }

    const SpanningTree& tree_;
    std::size_t tree_index_;
    const Annotations& a_;
    NodeOrder order_;
    std::vector<Row>& rows_;
};

void finalize(const Session& session, LayoutResult& layout) {
    layout.row_of.clear();
    for (std::size_t i = 0; i < layout.rows.size(); ++i)
        for (NodeIndex n : layout.rows[i].nodes()) layout.row_of[n] = i;
    const auto& forest = session.forest();
    for (auto& row : layout.rows) {
        NodeIndex first = row.is_aggregate() ? row.members.front() : row.node;
        auto link = forest[row.tree].parent(first);
        row.parent_row = link ? layout.find_row(link->parent) : std::nullopt;
    }
}

}  // namespace

BranchMode effective_mode(const Session& session, const LayoutConfig& config, NodeIndex n) {
    const SpanningTree* tree = session.tree_of(n);
    if (!tree) return BranchMode::tree;
    return mode_of(*tree, resolve(session, config), n);
}

LayoutResult linearize(const Session& session, const LayoutConfig& config) {
    LayoutResult layout;
    layout.sort = config.sort;
    layout.revision = session.revision();
    const Annotations annotations = resolve(session, config);
    const auto& forest = session.forest();
    for (std::size_t i = 0; i < forest.size(); ++i) {
        Emitter emitter(session, forest[i], i, annotations, config.sort, layout.rows);
        emitter.emit(forest[i].root());
    }
    finalize(session, layout);
    if (config.doi) return apply_doi(session, std::move(layout), *config.doi);
    return layout;
}

LayoutResult apply_doi(const Session& session, LayoutResult layout, const DOIFunction& doi) {
    const Graph& graph = session.graph();
    std::vector<Row> rows;
    rows.reserve(layout.rows.size());
    for (auto& row : layout.rows) {
        if (!row.is_aggregate()) {
            rows.push_back(std::move(row));
            continue;
        }
        std::vector<NodeIndex> rest;
        for (NodeIndex m : row.members) {
            if (!doi.matches(graph, m)) {
                rest.push_back(m);
                continue;
            }
            Row extracted;
            extracted.node = m;
            extracted.depth = row.depth;
            extracted.mode = row.mode;
            extracted.doi = true;
            extracted.tree = row.tree;
            rows.push_back(std::move(extracted));
        }
        if (!rest.empty()) {
            row.members = std::move(rest);
            rows.push_back(std::move(row));
        }
    }
    layout.rows = std::move(rows);
    finalize(session, layout);
    return layout;
}

}  // namespace grove
