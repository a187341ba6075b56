#include <doctest.h>

#include "grove/error.hpp"
#include "grove/topology.hpp"
#include "support/support.hpp"

using namespace grove;
using namespace grove::testing;

namespace {

Session fig2_session() {
    Session s(fixture("fig2"));
    s.add_node("A", true);
    s.add_node("E", false);
    s.add_node("G", false);
    s.add_root("A");
    return s;
}

std::set<std::string> edge_ids(const Session& s, const std::vector<HiddenEdge>& edges) {
    std::set<std::string> out;
    for (const auto& h : edges) out.insert(s.graph().edge(h.edge).id);
    return out;
}

// Independent reading of the compact count format.
std::string expected_count(std::uint64_t n) {
    if (n < 100) return std::to_string(n);
    if (n < 1000) return std::to_string(n / 100) + "h";
    return std::to_string(n / 1000) + "k";
}

// Sum identities tying per-row counts to the session's edge sets.
void check_count_identity(const Session& s) {
    LayoutResult layout = linearize(s);
    EdgeCounts counts = edge_counts(s, layout);
    REQUIRE(counts.rows.size() == layout.rows.size());
    std::size_t visible = 0, hidden = 0, tree_edges = 0, hidden_edges = 0;
    for (const auto& row : counts.rows) {
        visible += row.visible;
        hidden += row.hidden;
        CHECK(row.visible + row.hidden <= row.graph);
    }
    // Each induced edge counts once per endpoint shown in a row; pending
    // members have no row.
    for (EdgeIndex e : s.induced_edges()) {
        const Edge& edge = s.graph().edge(e);
        std::size_t shown = (s.tree_of(s.graph().require_node(edge.source)) ? 1 : 0) +
                            (s.tree_of(s.graph().require_node(edge.target)) ? 1 : 0);
        (s.is_tree_edge(e) ? tree_edges : hidden_edges) += shown;
    }
    CHECK(visible == tree_edges);
    CHECK(hidden == hidden_edges);
    for (std::size_t i = 0; i < layout.rows.size(); ++i) {
        const Row& row = layout.rows[i];
        std::size_t degree = 0, graph = 0;
        for (NodeIndex n : row.nodes()) {
            degree += s.subgraph_degree(n);
            graph += s.graph().degree(n);
        }
        CHECK(counts.rows[i].visible + counts.rows[i].hidden == degree);
        CHECK(counts.rows[i].graph == graph);
        const CountMaxima& max = row.is_aggregate() ? counts.aggregate_max : counts.individual_max;
        CHECK(counts.rows[i].visible <= max.visible);
        CHECK(counts.rows[i].hidden <= max.hidden);
        CHECK(counts.rows[i].graph <= max.graph);
    }
}

}  // namespace

TEST_CASE("edge counts for the six-row example") {
    Session s = fig2_session();
    LayoutResult layout = linearize(s);
    EdgeCounts counts = edge_counts(s, layout);
    // rows: A B E C D G
    std::vector<std::array<std::size_t, 3>> expected{{3, 0, 3}, {2, 2, 4}, {1, 0, 1},
                                                     {1, 1, 3}, {2, 1, 3}, {1, 0, 2}};
    for (std::size_t i = 0; i < expected.size(); ++i) {
        CHECK(counts.rows[i].visible == expected[i][0]);
        CHECK(counts.rows[i].hidden == expected[i][1]);
        CHECK(counts.rows[i].graph == expected[i][2]);
    }
    CHECK(counts.individual_max.visible == 3);
    CHECK(counts.individual_max.hidden == 2);
    CHECK(counts.individual_max.graph == 4);
    CHECK(counts.aggregate_max.graph == 0);
    check_count_identity(s);
}

TEST_CASE("hidden edges of B lead to C and D") {
    Session s = fig2_session();
    LayoutResult layout = linearize(s);
    auto hidden = hidden_edges_of(s, layout, node(s.graph(), "B"));
    CHECK(edge_ids(s, hidden) == std::set<std::string>{"B-C", "B-D"});
    for (const auto& h : hidden) {
        CHECK(h.from == node(s.graph(), "B"));
        CHECK(h.other_row == layout.find_row(h.other));
        CHECK_FALSE(h.internal);
    }
    CHECK(hidden_edges_of(s, layout, node(s.graph(), "E")).empty());
    CHECK_THROWS_AS(hidden_edges_of_row(s, layout, 99), NotFound);

    SUBCASE("edges inside an aggregate are internal") {
        s.set_branch_mode("A", BranchMode::level);
        s.set_aggregation("A", true);
        LayoutResult collapsed = linearize(s);
        auto edges = hidden_edges_of_row(s, collapsed, 1);  // [B C D]
        CHECK(edge_ids(s, edges) == std::set<std::string>{"B-C", "B-D"});
        for (const auto& h : edges) CHECK(h.internal);
    }
}

TEST_CASE("edge-count identity holds under random operations") {
    std::mt19937 rng(31);
    for (int round = 0; round < 25; ++round) {
        Session s(random_graph(rng, 8 + rng() % 25, 0.15));
        for (int step = 0; step < 80; ++step) {
            try {
                apply_operation(s, random_operation(rng, s));
            } catch (const Error&) {
            }
        }
        check_count_identity(s);
    }
}

TEST_CASE("matrix cells count members adjacent to each column") {
    Session s = fig2_session();
    s.set_branch_mode("A", BranchMode::level);
    s.set_aggregation("A", true);
    LayoutResult layout = linearize(s);  // A, [B C D], [E G]
    const Graph& g = s.graph();
    MatrixModel m = matrix(s, layout, {node(g, "B"), node(g, "F")});
    REQUIRE(m.cells.size() == 3);
    CHECK(m.cells[0][0].count == 1);
    CHECK(m.cells[0][0].normalized == 1.0);
    CHECK(m.cells[0][1].count == 0);
    CHECK(m.cells[1][0].count == 2);  // C and D touch B
    CHECK(m.cells[1][0].normalized == doctest::Approx(2.0 / 3.0));
    CHECK(m.cells[1][1].count == 1);  // F is outside the subgraph but adjacent to C
    CHECK(m.cells[2][0].count == 1);
    CHECK(m.cells[2][1].count == 1);
    CHECK(m.cells[2][1].normalized == 0.5);
}

TEST_CASE("matrix auto-population ranks tree nodes by induced degree") {
    Session s = fig2_session();
    CHECK(ids(s.graph(), auto_populate_matrix(s)) == std::vector<std::string>{"B", "A", "D", "C", "E"});
    CHECK(auto_populate_matrix(s, 2).size() == 2);
    Session empty(fixture("fig2"));
    CHECK(auto_populate_matrix(empty).empty());
}

TEST_CASE("shortest paths on the example graph") {
    Session s(fixture("fig2"));
    for (const char* id : {"A", "B", "C", "D", "E", "F", "G"}) s.add_node(id, false);
    s.add_root("A");
    const Graph& g = s.graph();
    PathResult r = all_shortest_paths(s, node(g, "E"), node(g, "G"));
    REQUIRE(r.length == 3u);
    REQUIRE(r.paths.size() == 1);
    CHECK(ids(g, r.paths[0].nodes) == std::vector<std::string>{"E", "B", "D", "G"});
    REQUIRE(r.paths[0].steps.size() == 3);
    CHECK(r.paths[0].steps[0].kind == StepKind::tree);

    PathResult bf = all_shortest_paths(s, node(g, "B"), node(g, "F"));
    CHECK(bf.length == 2u);
    REQUIRE(bf.paths.size() == 1);
    CHECK(ids(g, bf.paths[0].nodes) == std::vector<std::string>{"B", "C", "F"});

    PathResult self = all_shortest_paths(s, node(g, "C"), node(g, "C"));
    CHECK(self.length == 0u);
    CHECK(self.paths.size() == 1);

    Session apart(fixture("fig2"));
    apart.add_node("E", false);
    apart.add_node("G", false);
    PathResult none = all_shortest_paths(apart, node(g, "E"), node(g, "G"));
    CHECK_FALSE(none.length.has_value());
    CHECK(none.paths.empty());
}

TEST_CASE("shortest paths agree with exhaustive enumeration on random graphs") {
    std::mt19937 rng(41);
    for (int round = 0; round < 120; ++round) {
        auto g = random_graph(rng, 3 + rng() % 10, 0.2 + 0.1 * (round % 4));
        Session s(g);
        add_all(s);
        auto adj = adjacency(s);
        NodeIndex a = static_cast<NodeIndex>(rng() % g->node_count());
        NodeIndex b = static_cast<NodeIndex>(rng() % g->node_count());
        auto oracle = brute_force_shortest_paths(adj, a, b);
        PathResult r = all_shortest_paths(s, a, b);
        std::set<std::vector<NodeIndex>> got;
        for (const auto& p : r.paths) got.insert(p.nodes);
        if (oracle.size() > kMaxPaths) {
            CHECK(r.truncated);
            CHECK(r.paths.size() == kMaxPaths);
        } else {
            CHECK_FALSE(r.truncated);
            CHECK(got == oracle);
        }
        if (!oracle.empty()) CHECK(r.length == oracle.begin()->size() - 1);
    }
}

TEST_CASE("path limit truncates and reports it") {
    // Two hubs joined through k middle nodes: k shortest paths.
    std::vector<NodeType> types{{"t", std::nullopt, {}}};
    std::vector<Node> nodes{{"s", "t", "s", {}}, {"z", "t", "z", {}}};
    std::vector<Edge> edges;
    for (int i = 0; i < 5; ++i) {
        std::string m = "m" + std::to_string(i);
        nodes.push_back({m, "t", m, {}});
        edges.push_back({"s" + m, "s", m, std::nullopt, false});
        edges.push_back({m + "z", m, "z", std::nullopt, true});
    }
    Session s(std::make_shared<const Graph>(Graph::build(types, {}, nodes, edges)));
    add_all(s);
    const Graph& g = s.graph();
    PathResult r = all_shortest_paths(s, node(g, "z"), node(g, "s"), 3);
    CHECK(r.length == 2u);
    CHECK(r.paths.size() == 3);
    CHECK(r.truncated);
    CHECK(ids(g, r.paths[0].nodes) == std::vector<std::string>{"z", "m0", "s"});
    CHECK(all_shortest_paths(s, node(g, "z"), node(g, "s")).paths.size() == 5);
}

TEST_CASE("compact counts") {
    CHECK(format_count(0) == "0");
    CHECK(format_count(14) == "14");
    CHECK(format_count(99) == "99");
    CHECK(format_count(100) == "1h");
    CHECK(format_count(350) == "3h");
    CHECK(format_count(999) == "9h");
    CHECK(format_count(1000) == "1k");
    CHECK(format_count(17250) == "17k");
    for (std::uint64_t n = 0; n < 100000; ++n) {
        if (format_count(n) != expected_count(n)) {
            FAIL_CHECK("mismatch at " << n);
            break;
        }
    }
}
