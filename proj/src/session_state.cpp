#include "grove/error.hpp"
#include "grove/serialize.hpp"
#include "grove/session.hpp"

namespace grove {

using nlohmann::json;

namespace {
constexpr int kStateVersion = 1;
}

json Session::to_state() const {
    json subgraph = json::array();
    for (NodeIndex n : subgraph_nodes()) subgraph.push_back(graph_->node(n).id);

    json trees = json::array();
    for (const auto& tree : forest_) {
        json links = json::array();
        for (NodeIndex n : tree.preorder()) {
            auto link = tree.parent(n);
            if (!link) continue;
            links.push_back({graph_->node(n).id, graph_->node(link->parent).id, graph_->edge(link->edge).id});
        }
        trees.push_back({{"root", graph_->node(tree.root()).id}, {"links", std::move(links)}});
    }

    return {{"version", kStateVersion},
            {"revision", revision_},
            {"subgraph", std::move(subgraph)},
            {"trees", std::move(trees)},
            {"typeFilters", type_filters_},
            {"order", to_json(order_)},
            {"selection", selection_ ? json(graph_->node(*selection_).id) : json(nullptr)},
            {"view", to_json(view_)}};
}

Session Session::from_state(std::shared_ptr<const Graph> graph, const json& state) {
    if (state.value("version", 0) != kStateVersion)
        throw ValidationError("unsupported session state version " + state.value("version", json(0)).dump());
    Session s(std::move(graph));
    const Graph& g = *s.graph_;

    s.type_filters_ = state.value("typeFilters", std::set<std::string>{});
    for (std::size_t i = 0; i < g.node_types().size(); ++i)
        s.filtered_type_[i] = s.type_filters_.count(g.node_types()[i].name) ? 1 : 0;

    for (const auto& id : state.at("subgraph")) s.add_member(g.require_node(id.get<std::string>()));

    for (const auto& t : state.at("trees")) {
        SpanningTree tree(s.require_member(t.at("root").get<std::string>()));
        for (const auto& link : t.at("links")) {
            NodeIndex child = s.require_member(link.at(0).get<std::string>());
            NodeIndex parent = s.require_member(link.at(1).get<std::string>());
            auto edge = g.find_edge(link.at(2).get<std::string>());
            if (!edge || g.opposite(*edge, parent) != child || !tree.contains(parent) || tree.contains(child))
                throw ValidationError("inconsistent tree link in session state");
            tree.attach(child, {parent, *edge});
        }
        s.forest_.push_back(std::move(tree));
    }

    s.order_ = order_from_json(state.at("order"));
    if (auto it = state.find("selection"); it != state.end() && !it->is_null())
        s.selection_ = s.require_member(it->get<std::string>());
    s.view_ = layout_config_from_json(state.at("view"));
    s.revision_ = state.at("revision").get<std::uint64_t>();
    return s;
}

}  // namespace grove
