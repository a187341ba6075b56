#pragma once
// Shared test helpers: fixtures, random graphs, independent oracles and a
// random operation generator. The oracles use only the raw edge list, never
// the engine's adjacency or traversal code.

#include <algorithm>
#include <cmath>
#include <deque>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "grove/graph.hpp"
#include "grove/operations.hpp"
#include "grove/session.hpp"

namespace grove::testing {

inline std::filesystem::path data_dir() { return GROVE_TEST_DATA; }

inline std::shared_ptr<const Graph> fixture(const std::string& name) {
    static std::map<std::string, std::shared_ptr<const Graph>> cache;
    auto& slot = cache[name];
    if (!slot) slot = std::make_shared<const Graph>(load_dataset(data_dir() / name));
    return slot;
}

inline NodeIndex node(const Graph& graph, const std::string& id) { return graph.require_node(id); }

inline std::vector<std::string> ids(const Graph& graph, const std::vector<NodeIndex>& nodes) {
    std::vector<std::string> out;
    for (NodeIndex n : nodes) out.push_back(graph.node(n).id);
    return out;
}

// Two node types with a sparse numeric and an ordinal attribute, so filters,
// DOI and attribute sorting have something to bite on.
inline std::shared_ptr<const Graph> random_graph(std::mt19937& rng, std::size_t n, double p) {
    std::vector<NodeType> types{
        {"red", std::nullopt, {{"weight", AttributeKind::numeric, 0.0, 100.0, {}},
                               {"tier", AttributeKind::ordinal, std::nullopt, std::nullopt, {"low", "mid", "high"}}}},
        {"blue", std::nullopt, {{"weight", AttributeKind::numeric, 0.0, 100.0, {}}}},
    };
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Node> nodes;
    for (std::size_t i = 0; i < n; ++i) {
        Node node;
        node.id = "n" + std::to_string(i);
        node.type = unit(rng) < 0.7 ? "red" : "blue";
        node.label = "v" + std::to_string(rng() % (n + 1));  // duplicate labels exercise id tie-breaks
        if (unit(rng) < 0.8) node.attributes["weight"] = std::floor(unit(rng) * 100.0);
        if (node.type == "red" && unit(rng) < 0.7) {
            static const char* tiers[] = {"low", "mid", "high"};
            node.attributes["tier"] = std::string(tiers[rng() % 3]);
        }
        nodes.push_back(std::move(node));
    }
    std::vector<Edge> edges;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            if (unit(rng) < p) {
                bool flip = rng() % 2;
                edges.push_back({"e" + std::to_string(edges.size()), nodes[flip ? b : a].id, nodes[flip ? a : b].id,
                                 std::nullopt, false});
            }
    return std::make_shared<const Graph>(Graph::build(std::move(types), {}, std::move(nodes), std::move(edges)));
}

// ---------------------------------------------------------------------------
// Oracles

using Adjacency = std::vector<std::vector<NodeIndex>>;

// Simple adjacency (parallel edges collapsed) restricted to `keep`, built from
// the raw edge list.
inline Adjacency adjacency(const Graph& graph, const std::function<bool(NodeIndex)>& keep) {
    std::map<std::string, NodeIndex> index;
    for (std::size_t i = 0; i < graph.node_count(); ++i) index[graph.node(static_cast<NodeIndex>(i)).id] = static_cast<NodeIndex>(i);
    std::vector<std::set<NodeIndex>> sets(graph.node_count());
    for (const auto& e : graph.edges()) {
        NodeIndex a = index.at(e.source);
        NodeIndex b = index.at(e.target);
        if (!keep(a) || !keep(b)) continue;
        sets[a].insert(b);
        sets[b].insert(a);
    }
    Adjacency out(graph.node_count());
    for (std::size_t i = 0; i < sets.size(); ++i) out[i].assign(sets[i].begin(), sets[i].end());
    return out;
}

inline Adjacency adjacency(const Session& session) {
    return adjacency(session.graph(), [&](NodeIndex n) { return session.in_subgraph(n); });
}

inline std::vector<int> bfs_hops(const Adjacency& adj, NodeIndex root) {
    std::vector<int> dist(adj.size(), -1);
    dist[root] = 0;
    std::deque<NodeIndex> queue{root};
    while (!queue.empty()) {
        NodeIndex u = queue.front();
        queue.pop_front();
        for (NodeIndex v : adj[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

// Every simple a-b path by exhaustive DFS, keeping the shortest ones.
inline std::set<std::vector<NodeIndex>> brute_force_shortest_paths(const Adjacency& adj, NodeIndex a, NodeIndex b) {
    std::set<std::vector<NodeIndex>> best;
    std::size_t best_len = SIZE_MAX;
    std::vector<NodeIndex> path{a};
    std::vector<char> on_path(adj.size(), 0);
    on_path[a] = 1;
    std::function<void(NodeIndex)> walk = [&](NodeIndex u) {
        if (u == b) {
            if (path.size() < best_len) {
                best.clear();
                best_len = path.size();
            }
            if (path.size() == best_len) best.insert(path);
            return;
        }
        for (NodeIndex v : adj[u]) {
            if (on_path[v]) continue;
            on_path[v] = 1;
            path.push_back(v);
            walk(v);
            path.pop_back();
            on_path[v] = 0;
        }
    };
    walk(a);
    return best;
}

// Structural invariants of a session, checked from the outside. Returns a
// description of each violation.
inline std::vector<std::string> invariant_violations(const Session& session) {
    const Graph& graph = session.graph();
    std::vector<std::string> out;
    std::vector<int> owner(graph.node_count(), -1);
    for (std::size_t t = 0; t < session.forest().size(); ++t) {
        const SpanningTree& tree = session.forest()[t];
        if (tree.parent(tree.root())) out.push_back("root has a parent");
        if (tree.depth(tree.root()) != 0) out.push_back("root depth is not 0");
        const auto nodes = tree.preorder();
        if (nodes.size() != tree.size()) out.push_back("preorder misses nodes of tree " + std::to_string(t));
        for (NodeIndex v : nodes) {
            const std::string& id = graph.node(v).id;
            if (owner[v] >= 0) out.push_back(id + " is in two trees");
            owner[v] = static_cast<int>(t);
            if (!session.in_subgraph(v)) out.push_back(id + " is in a tree but not in the subgraph");
            if (session.type_filtered(v)) out.push_back(id + " has a filtered type");
            for (NodeIndex c : tree.children(v)) {
                auto link = tree.parent(c);
                if (!link || link->parent != v) out.push_back("child link of " + id + " is inconsistent");
            }
            auto link = tree.parent(v);
            if (!link) continue;
            const Edge& e = graph.edge(link->edge);
            const std::string& p = graph.node(link->parent).id;
            if (!((e.source == id && e.target == p) || (e.source == p && e.target == id)))
                out.push_back("tree edge " + e.id + " does not join " + id + " and " + p);
            if (tree.depth(v) != tree.depth(link->parent) + 1) out.push_back("depth of " + id + " is off");
        }
    }
    std::size_t members = 0;
    for (std::size_t i = 0; i < graph.node_count(); ++i) {
        NodeIndex n = static_cast<NodeIndex>(i);
        if (!session.in_subgraph(n)) continue;
        ++members;
        if (session.type_filtered(n)) out.push_back(graph.node(n).id + " is a filtered member");
    }
    if (members != session.subgraph_size()) out.push_back("subgraph size is off");
    for (NodeIndex p : session.pending())
        if (owner[p] >= 0) out.push_back(graph.node(p).id + " is pending and in a tree");
    return out;
}

// ---------------------------------------------------------------------------
// Fuzzing

inline void add_all(Session& session) {
    for (const auto& n : session.graph().nodes())
        if (!session.type_filtered(session.graph().require_node(n.id))) session.add_node(n.id, false);
}

// A random operation, usually valid for the current state but not always:
// callers apply it and ignore engine errors.
inline Operation random_operation(std::mt19937& rng, const Session& session) {
    const Graph& graph = session.graph();
    auto any_node = [&]() { return graph.node(static_cast<NodeIndex>(rng() % graph.node_count())).id; };
    auto member = [&]() {
        auto nodes = session.subgraph_nodes();
        if (nodes.empty()) return any_node();
        return graph.node(nodes[rng() % nodes.size()]).id;
    };
    auto tree_node = [&]() {
        std::vector<NodeIndex> nodes;
        for (const auto& t : session.forest())
            for (NodeIndex n : t.preorder()) nodes.push_back(n);
        if (nodes.empty()) return member();
        return graph.node(nodes[rng() % nodes.size()]).id;
    };
    switch (rng() % 20) {
        case 0:
        case 1:
            return ops::AddNode{any_node(), rng() % 2 == 0};
        case 2:
            return ops::AddRoot{rng() % 3 == 0 ? std::nullopt : std::optional<std::string>(any_node())};
        case 3:
        case 4:
            return ops::ExpandMissing{tree_node()};
        case 5:
            return ops::MakeRoot{member()};
        case 6:
            return ops::GatherChildren{tree_node()};
        case 7:
            return ops::RemoveBranch{tree_node()};
        case 8: {
            // prefer a hidden edge so the reattachment is usually legal
            std::string id = tree_node();
            NodeIndex n = graph.require_node(id);
            std::vector<std::string> options;
            for (const auto& inc : graph.incident(n))
                if (session.in_subgraph(inc.other) && !session.is_tree_edge(inc.edge))
                    options.push_back(graph.node(inc.other).id);
            return ops::ReattachBranch{id, options.empty() ? tree_node() : options[rng() % options.size()]};
        }
        case 9: {
            std::set<std::string> excluded;
            if (rng() % 3 == 0) excluded.insert(rng() % 2 ? "red" : "blue");
            return ops::SetTypeFilters{excluded};
        }
        case 10:
            return ops::SetBranchMode{tree_node(), rng() % 2 ? BranchMode::level : BranchMode::tree};
        case 11:
        case 12:
            return ops::SetAggregation{tree_node(), rng() % 3 != 0};
        case 13: {
            if (rng() % 3 == 0) return ops::SetDOI{};
            DOIFunction doi;
            doi.predicate.attribute = "weight";
            double lo = static_cast<double>(rng() % 100);
            doi.predicate.min = lo;
            if (rng() % 2) doi.predicate.max = lo + static_cast<double>(rng() % 50);
            if (rng() % 2) doi.types = {"red"};
            return ops::SetDOI{doi};
        }
        case 14: {
            static const OrderKey keys[] = {OrderKey::label, OrderKey::degree, OrderKey::attribute,
                                            OrderKey::visible, OrderKey::hidden, OrderKey::graph};
            OrderSpec spec{keys[rng() % 6], "", rng() % 2 ? Direction::descending : Direction::ascending};
            if (spec.key == OrderKey::attribute) spec.attribute = rng() % 2 ? "weight" : "tier";
            if (rng() % 2) return ops::SetSort{spec};
            return ops::SetOrder{spec};
        }
        case 15: {
            // a walk along induced edges, sometimes invalid
            std::vector<std::string> path{tree_node()};
            std::size_t length = 1 + rng() % 4;
            for (std::size_t i = 0; i < length; ++i) {
                NodeIndex last = graph.require_node(path.back());
                std::vector<std::string> next;
                for (const auto& inc : graph.incident(last)) {
                    const std::string& other = graph.node(inc.other).id;
                    if (session.in_subgraph(inc.other) && std::find(path.begin(), path.end(), other) == path.end())
                        next.push_back(other);
                }
                if (next.empty()) break;
                path.push_back(next[rng() % next.size()]);
            }
            return ops::PathSort{path};
        }
        case 16:
            return ops::Select{rng() % 4 == 0 ? std::nullopt : std::optional<std::string>(member())};
        case 17:
            return ops::SetMatrixColumns{rng() % 2 ? std::nullopt
                                                   : std::optional<std::vector<std::string>>({any_node(), any_node()})};
        case 18:
            return ops::ExpandMissing{tree_node()};
        default:
            return ops::AddNode{any_node(), true};
    }
}

}  // namespace grove::testing
