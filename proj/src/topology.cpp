#include "grove/topology.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_set>

#include "grove/error.hpp"

namespace grove {

EdgeCounts edge_counts(const Session& session, const LayoutResult& layout) {
    const Graph& graph = session.graph();
    EdgeCounts counts;
    counts.rows.reserve(layout.rows.size());
    for (const auto& row : layout.rows) {
        RowEdgeCounts c;
        for (NodeIndex n : row.nodes()) {
            std::size_t visible = session.tree_degree(n);
            c.visible += visible;
            c.hidden += session.subgraph_degree(n) - visible;
            c.graph += graph.degree(n);
        }
        CountMaxima& m = row.is_aggregate() ? counts.aggregate_max : counts.individual_max;
        m.visible = std::max(m.visible, c.visible);
        m.hidden = std::max(m.hidden, c.hidden);
        m.graph = std::max(m.graph, c.graph);
        counts.rows.push_back(c);
    }
    return counts;
}

std::vector<HiddenEdge> hidden_edges_of(const Session& session, const LayoutResult& layout, NodeIndex node) {
    if (!session.in_subgraph(node))
        throw PreconditionError("node '" + session.graph().node(node).id + "' is not in the subgraph");
    std::vector<HiddenEdge> out;
    for (const auto& inc : session.graph().incident(node)) {
        if (!session.in_subgraph(inc.other) || session.is_tree_edge(inc.edge)) continue;
        out.push_back({inc.edge, node, inc.other, layout.find_row(inc.other), false});
    }
    return out;
}

std::vector<HiddenEdge> hidden_edges_of_row(const Session& session, const LayoutResult& layout, std::size_t row) {
    if (row >= layout.rows.size()) throw NotFound("no row " + std::to_string(row));
    const std::vector<NodeIndex> members = layout.rows[row].nodes();
    const std::unordered_set<NodeIndex> inside(members.begin(), members.end());
    std::unordered_set<EdgeIndex> seen;
    std::vector<HiddenEdge> out;
    for (NodeIndex n : members) {
        for (const auto& inc : session.graph().incident(n)) {
            if (!session.in_subgraph(inc.other) || session.is_tree_edge(inc.edge)) continue;
            const bool internal = inside.count(inc.other) > 0;
            if (internal && !seen.insert(inc.edge).second) continue;
            out.push_back({inc.edge, n, inc.other, layout.find_row(inc.other), internal});
        }
    }
    return out;
}

MatrixModel matrix(const Session& session, const LayoutResult& layout, const std::vector<NodeIndex>& columns) {
    const Graph& graph = session.graph();
    MatrixModel model;
    model.columns = columns;
    model.cells.assign(layout.rows.size(), std::vector<MatrixCell>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        std::unordered_set<NodeIndex> adjacent;
        for (const auto& inc : graph.incident(columns[c])) adjacent.insert(inc.other);
        for (std::size_t r = 0; r < layout.rows.size(); ++r) {
            const std::vector<NodeIndex> members = layout.rows[r].nodes();
            std::size_t count = 0;
            for (NodeIndex m : members) count += adjacent.count(m);
            model.cells[r][c] = {count, static_cast<double>(count) / static_cast<double>(members.size())};
        }
    }
    return model;
}

std::vector<NodeIndex> auto_populate_matrix(const Session& session, std::size_t k) {
    std::vector<NodeIndex> nodes;
    for (const auto& tree : session.forest()) {
        auto pre = tree.preorder();
        nodes.insert(nodes.end(), pre.begin(), pre.end());
    }
    std::vector<std::pair<std::size_t, NodeIndex>> ranked;
    ranked.reserve(nodes.size());
    for (NodeIndex n : nodes) ranked.emplace_back(session.subgraph_degree(n), n);
    const Graph& graph = session.graph();
    std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return label_less(graph, a.second, b.second);
    });
    std::vector<NodeIndex> out;
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) out.push_back(ranked[i].second);
    return out;
}

namespace {

constexpr std::size_t kUnreached = std::numeric_limits<std::size_t>::max();

std::vector<std::size_t> hop_distances(const Session& session, NodeIndex from) {
    const Graph& graph = session.graph();
    std::vector<std::size_t> dist(graph.node_count(), kUnreached);
    dist[from] = 0;
    std::deque<NodeIndex> queue{from};
    while (!queue.empty()) {
        NodeIndex u = queue.front();
        queue.pop_front();
        for (const auto& inc : graph.incident(u)) {
            if (!session.in_subgraph(inc.other) || dist[inc.other] != kUnreached) continue;
            dist[inc.other] = dist[u] + 1;
            queue.push_back(inc.other);
        }
    }
    return dist;
}

PathStep step_between(const Session& session, NodeIndex u, NodeIndex v) {
    const Graph& graph = session.graph();
    std::optional<EdgeIndex> first;
    for (const auto& inc : graph.incident(u)) {
        if (inc.other != v) continue;
        if (session.is_tree_edge(inc.edge)) return {inc.edge, StepKind::tree};
        if (!first) first = inc.edge;
    }
    return {*first, StepKind::hidden};
}

}  // namespace

PathResult all_shortest_paths(const Session& session, NodeIndex a, NodeIndex b, std::size_t limit) {
    const Graph& graph = session.graph();
    for (NodeIndex n : {a, b})
        if (!session.in_subgraph(n))
            throw PreconditionError("node '" + graph.node(n).id + "' is not in the subgraph");

    PathResult result;
    result.from = a;
    result.to = b;
    if (a == b) {
        result.length = 0;
        result.paths.push_back({{a}, {}});
        return result;
    }

    const auto from_a = hop_distances(session, a);
    if (from_a[b] == kUnreached) return result;
    const auto from_b = hop_distances(session, b);
    result.length = from_a[b];

    // successors of v on some shortest a-b path, in (label, id) order
    std::unordered_map<NodeIndex, std::vector<NodeIndex>> next;
    auto successors = [&](NodeIndex v) -> const std::vector<NodeIndex>& {
        auto it = next.find(v);
        if (it != next.end()) return it->second;
        std::vector<NodeIndex> out;
        for (const auto& inc : graph.incident(v)) {
            NodeIndex w = inc.other;
            if (!session.in_subgraph(w)) continue;
            if (from_a[w] == from_a[v] + 1 && from_b[w] + 1 == from_b[v] &&
                std::find(out.begin(), out.end(), w) == out.end())
                out.push_back(w);
        }
        std::sort(out.begin(), out.end(), [&](NodeIndex x, NodeIndex y) { return label_less(graph, x, y); });
        return next.emplace(v, std::move(out)).first->second;
    };

    // number of shortest paths from v to b, saturated just above the limit
    std::unordered_map<NodeIndex, std::size_t> memo;
    auto count_from = [&](auto&& self, NodeIndex v) -> std::size_t {
        if (v == b) return 1;
        if (auto it = memo.find(v); it != memo.end()) return it->second;
        std::size_t total = 0;
        for (NodeIndex w : successors(v)) total = std::min(total + self(self, w), limit + 1);
        memo.emplace(v, total);
        return total;
    };
    result.truncated = count_from(count_from, a) > limit;

    std::vector<NodeIndex> prefix{a};
    auto enumerate = [&](auto&& self, NodeIndex v) -> void {
        if (result.paths.size() >= limit) return;
        if (v == b) {
            ShortestPath path;
            path.nodes = prefix;
            for (std::size_t i = 1; i < prefix.size(); ++i)
                path.steps.push_back(step_between(session, prefix[i - 1], prefix[i]));
            result.paths.push_back(std::move(path));
            return;
        }
        for (NodeIndex w : successors(v)) {
            prefix.push_back(w);
            self(self, w);
            prefix.pop_back();
            if (result.paths.size() >= limit) return;
        }
    };
    enumerate(enumerate, a);
    return result;
}

std::string format_count(std::uint64_t n) {
    if (n < 100) return std::to_string(n);
    if (n < 1000) return std::to_string(n / 100) + "h";
    return std::to_string(n / 1000) + "k";
}

}  // namespace grove
