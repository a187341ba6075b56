#include <doctest.h>

#include "grove/error.hpp"
#include "support/support.hpp"

using namespace grove;
using namespace grove::testing;

namespace {

// A plus neighbors, then E and G: the subgraph of the six-row example.
Session fig2_session() {
    Session s(fixture("fig2"));
    s.add_node("A", true);
    s.add_node("E", false);
    s.add_node("G", false);
    s.add_root("A");
    return s;
}

std::set<std::string> tree_edges(const Session& s) {
    std::set<std::string> out;
    for (const auto& tree : s.forest())
        for (NodeIndex v : tree.preorder())
            if (auto link = tree.parent(v)) out.insert(s.graph().edge(link->edge).id);
    return out;
}

std::vector<std::string> children(const Session& s, const std::string& id) {
    NodeIndex n = node(s.graph(), id);
    auto kids = s.tree_of(n)->children(n);
    std::vector<std::string> out;
    for (NodeIndex c : kids) out.push_back(s.graph().node(c).id);
    std::sort(out.begin(), out.end());
    return out;
}

std::string parent(const Session& s, const std::string& id) {
    NodeIndex n = node(s.graph(), id);
    auto link = s.tree_of(n)->parent(n);
    return link ? s.graph().node(link->parent).id : "";
}

std::shared_ptr<const Graph> two_colour_path() {
    std::vector<NodeType> types{{"red", std::nullopt, {}}, {"blue", std::nullopt, {}}};
    std::vector<Node> nodes{{"a", "red", "a", {}}, {"b", "blue", "b", {}}, {"c", "red", "c", {}},
                            {"d", "red", "d", {}}, {"e", "red", "e", {}}};
    std::vector<Edge> edges{{"ab", "a", "b", std::nullopt, false}, {"bc", "b", "c", std::nullopt, false},
                            {"ad", "a", "d", std::nullopt, false}, {"ce", "c", "e", std::nullopt, false}};
    return std::make_shared<const Graph>(Graph::build(types, {}, nodes, edges));
}

}  // namespace

TEST_CASE("root A with label order gives the expected tree and hidden edges") {
    Session s = fig2_session();
    CHECK(tree_edges(s) == std::set<std::string>{"A-B", "A-C", "A-D", "B-E", "D-G"});
    CHECK(s.pending().empty());
    CHECK(s.subgraph_size() == 6);
    NodeIndex b = node(s.graph(), "B");
    CHECK(s.subgraph_degree(b) == 4);
    CHECK(s.tree_degree(b) == 2);
    CHECK(invariant_violations(s).empty());
}

TEST_CASE("nodes added before any root are pending") {
    Session s(fixture("fig2"));
    s.add_node("A", true);
    CHECK(s.forest().empty());
    CHECK(ids(s.graph(), s.pending()) == std::vector<std::string>{"A", "B", "C", "D"});
    SUBCASE("addRoot without id picks the best-connected pending node") {
        s.add_root(std::nullopt);
        REQUIRE(s.forest().size() == 1);
        CHECK(s.graph().node(s.forest()[0].root()).id == "A");
        CHECK_THROWS_AS(s.add_root(std::nullopt), PreconditionError);
    }
    SUBCASE("an empty subgraph has nothing to root") {
        Session empty(fixture("fig2"));
        CHECK_THROWS_AS(empty.add_root(std::nullopt), PreconditionError);
    }
}

TEST_CASE("a new node attaches under its shallowest tree neighbor") {
    Session s = fig2_session();
    s.add_node("F", false);
    CHECK(parent(s, "F") == "C");
    CHECK(invariant_violations(s).empty());
}

TEST_CASE("a second root only claims pending nodes") {
    Session s(fixture("fig2"));
    s.add_root("A");
    s.add_node("F", false);  // not adjacent to A, so pending
    s.add_node("G", false);  // adjacent to F only among members
    CHECK(ids(s.graph(), s.pending()) == std::vector<std::string>{"F", "G"});
    s.add_root("G");
    REQUIRE(s.forest().size() == 2);
    CHECK(children(s, "G") == std::vector<std::string>{"F"});
    CHECK(invariant_violations(s).empty());
}

TEST_CASE("expandMissing attaches every absent neighbor as a child") {
    Session s = fig2_session();
    s.expand_missing_neighbors("C");
    CHECK(children(s, "C") == std::vector<std::string>{"F"});
    CHECK(s.subgraph_size() == 7);
    s.expand_missing_neighbors("C");  // nothing left to add
    CHECK(s.subgraph_size() == 7);
}

TEST_CASE("makeRoot reveals every subgraph neighbor as a child") {
    Session s = fig2_session();
    s.make_root("B");
    CHECK(s.graph().node(s.forest()[0].root()).id == "B");
    CHECK(children(s, "B") == std::vector<std::string>{"A", "C", "D", "E"});
    CHECK(parent(s, "G") == "D");
    CHECK(invariant_violations(s).empty());
}

TEST_CASE("makeRoot absorbs trees it reaches") {
    Session s(fixture("fig2"));
    s.add_root("A");
    s.add_node("F", false);
    s.add_root("F");
    s.add_node("C", false);  // joins A's tree; C-F is now a hidden edge
    REQUIRE(s.forest().size() == 2);
    s.make_root("C");
    REQUIRE(s.forest().size() == 1);
    CHECK(children(s, "C") == std::vector<std::string>{"A", "F"});
}

TEST_CASE("gatherChildren pulls non-ancestor neighbors under the node") {
    Session s = fig2_session();
    s.gather_children("C");
    CHECK(children(s, "C") == std::vector<std::string>{"B"});
    CHECK(parent(s, "E") == "B");
    CHECK(s.tree_of(node(s.graph(), "E"))->depth(node(s.graph(), "E")) == 3);
    CHECK(invariant_violations(s).empty());
}

TEST_CASE("removeBranch drops the subtree from the subgraph") {
    Session s = fig2_session();
    s.select("G");
    s.remove_branch("D");
    CHECK(s.subgraph_size() == 4);
    CHECK_FALSE(s.in_subgraph(node(s.graph(), "G")));
    CHECK_FALSE(s.selection());
    s.remove_branch("A");
    CHECK(s.forest().empty());
    CHECK(s.subgraph_size() == 0);
}

TEST_CASE("reattachBranch follows a hidden edge and rejects cycles") {
    Session s = fig2_session();
    const auto before = s.revision();
    CHECK_THROWS_AS(s.reattach_branch("E", "A"), PreconditionError);
    CHECK_THROWS_AS(s.reattach_branch("A", "B"), CycleError);
    CHECK(s.revision() == before);
    s.reattach_branch("B", "D");
    CHECK(parent(s, "B") == "D");
    CHECK(parent(s, "E") == "B");
    CHECK(s.tree_of(node(s.graph(), "E"))->depth(node(s.graph(), "E")) == 3);
    CHECK(invariant_violations(s).empty());
}

TEST_CASE("type filters remove members and repair the forest") {
    Session s(two_colour_path());
    for (const char* id : {"a", "b", "c", "d", "e"}) s.add_node(id, false);
    s.add_root("a");
    REQUIRE(s.forest().size() == 1);
    s.set_type_filters({"blue"});
    CHECK_FALSE(s.in_subgraph(node(s.graph(), "b")));
    REQUIRE(s.forest().size() == 2);
    CHECK(s.graph().node(s.forest()[0].root()).id == "a");
    CHECK(s.graph().node(s.forest()[1].root()).id == "c");
    CHECK(children(s, "c") == std::vector<std::string>{"e"});
    CHECK(invariant_violations(s).empty());
    CHECK_THROWS_AS(s.add_node("b", false), PreconditionError);
    CHECK_THROWS_AS(s.set_type_filters({"green"}), PreconditionError);
    s.set_type_filters({});
    s.add_node("b", false);
    CHECK(s.in_subgraph(node(s.graph(), "b")));
}

TEST_CASE("pathSort turns the path into a parent-child chain") {
    Session s = fig2_session();
    s.path_sort({"E", "B", "C"});
    CHECK(s.graph().node(s.forest()[0].root()).id == "E");
    CHECK(parent(s, "B") == "E");
    CHECK(parent(s, "C") == "B");
    CHECK(s.view().pinned_path == std::vector<std::string>{"E", "B", "C"});
    CHECK(invariant_violations(s).empty());
    CHECK_THROWS_AS(s.path_sort({"A", "G"}), PreconditionError);
    CHECK_THROWS_AS(s.path_sort({"A", "B", "A"}), PreconditionError);
    s.path_sort({"A"});
    CHECK(s.view().pinned_path.empty());
}

TEST_CASE("node references distinguish unknown ids from non-members") {
    Session s = fig2_session();
    CHECK_THROWS_AS(s.make_root("Q"), NotFound);
    CHECK_THROWS_AS(s.make_root("F"), PreconditionError);
    CHECK_THROWS_AS(s.set_aggregation("F", true), PreconditionError);
}

TEST_CASE("every applied operation bumps the revision") {
    Session s(fixture("fig2"));
    CHECK(s.revision() == 0);
    s.add_node("A", false);
    s.add_root("A");
    s.set_sort({OrderKey::degree, "", Direction::descending});
    s.set_sort({OrderKey::degree, "", Direction::descending});
    CHECK(s.revision() == 4);
}

TEST_CASE("session state round-trips") {
    Session s = fig2_session();
    s.expand_missing_neighbors("C");
    s.gather_children("C");
    s.set_branch_mode("B", BranchMode::level);
    s.set_aggregation("A", true);
    s.set_type_filters({});
    s.select("B");
    s.set_matrix_columns(std::vector<std::string>{"F", "B"});
    const auto state = s.to_state();
    Session copy = Session::from_state(s.graph_ptr(), state);
    CHECK(copy.to_state() == state);
    CHECK(copy.revision() == s.revision());

    auto broken = state;
    broken["version"] = 99;
    CHECK_THROWS_AS(Session::from_state(s.graph_ptr(), broken), ValidationError);
}

TEST_CASE("spanning tree depths equal BFS hop distances on random graphs") {
    std::mt19937 rng(7);
    for (int round = 0; round < 60; ++round) {
        auto g = random_graph(rng, 5 + rng() % 40, 0.05 + 0.05 * (round % 5));
        Session s(g);
        add_all(s);
        NodeIndex root = static_cast<NodeIndex>(rng() % g->node_count());
        SpanningTree tree = build_spanning_tree(s, root);
        auto hops = bfs_hops(adjacency(s), root);
        for (std::size_t i = 0; i < g->node_count(); ++i) {
            NodeIndex n = static_cast<NodeIndex>(i);
            if (hops[n] < 0)
                CHECK_FALSE(tree.contains(n));
            else
                CHECK(tree.depth(n) == hops[n]);
        }
    }
}

TEST_CASE("random operation sequences keep the invariants") {
    std::mt19937 rng(11);
    for (int round = 0; round < 20; ++round) {
        Session s(random_graph(rng, 10 + rng() % 20, 0.15));
        for (int step = 0; step < 150; ++step) {
            Operation op = random_operation(rng, s);
            try {
                apply_operation(s, op);
            } catch (const Error&) {
            }
            auto violations = invariant_violations(s);
            if (!violations.empty()) {
                FAIL_CHECK(grove::to_json(op).dump() << ": " << violations.front());
                break;
            }
        }
    }
}
