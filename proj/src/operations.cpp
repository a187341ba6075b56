#include "grove/operations.hpp"

#include "grove/serialize.hpp"

namespace grove {

using nlohmann::json;

namespace {

template <typename T>
inline constexpr bool always_false = false;

std::string string_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_string()) throw PreconditionError(std::string("field '") + name + "' must be a string");
    return it->get<std::string>();
}

std::optional<std::string> optional_string(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw PreconditionError(std::string("field '") + name + "' must be a string");
    return it->get<std::string>();
}

bool bool_field(const json& j, const char* name, std::optional<bool> fallback = std::nullopt) {
    auto it = j.find(name);
    if (it == j.end() && fallback) return *fallback;
    if (it == j.end() || !it->is_boolean()) throw PreconditionError(std::string("field '") + name + "' must be a boolean");
    return it->get<bool>();
}

std::vector<std::string> strings_field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || !it->is_array()) throw PreconditionError(std::string("field '") + name + "' must be an array");
    std::vector<std::string> out;
    for (const auto& v : *it) {
        if (!v.is_string()) throw PreconditionError(std::string("field '") + name + "' must hold strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

std::optional<std::vector<std::string>> optional_strings(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return strings_field(j, name);
}

json optional_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

json optional_json(const std::optional<std::vector<std::string>>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

Operation parse_operation(const json& j) {
    if (!j.is_object()) throw PreconditionError("operation must be an object");
    const std::string tag = string_field(j, "op");
    if (tag == "addRoot") return ops::AddRoot{optional_string(j, "node")};
    if (tag == "addNode") return ops::AddNode{string_field(j, "node"), bool_field(j, "withNeighbors", false)};
    if (tag == "expandMissing") return ops::ExpandMissing{string_field(j, "node")};
    if (tag == "makeRoot") return ops::MakeRoot{string_field(j, "node")};
    if (tag == "gatherChildren") return ops::GatherChildren{string_field(j, "node")};
    if (tag == "removeBranch") return ops::RemoveBranch{string_field(j, "node")};
    if (tag == "reattachBranch") return ops::ReattachBranch{string_field(j, "node"), string_field(j, "newParent")};
    if (tag == "setTypeFilters") {
        auto excluded = strings_field(j, "excluded");
        return ops::SetTypeFilters{{excluded.begin(), excluded.end()}};
    }
    if (tag == "setBranchMode")
        return ops::SetBranchMode{string_field(j, "node"), parse_branch_mode(string_field(j, "mode"))};
    if (tag == "setAggregation") return ops::SetAggregation{string_field(j, "node"), bool_field(j, "aggregate")};
    if (tag == "setDOI") {
        auto it = j.find("doi");
        if (it == j.end() || it->is_null()) return ops::SetDOI{};
        return ops::SetDOI{doi_from_json(*it)};
    }
    if (tag == "setSort") {
        auto it = j.find("sort");
        if (it == j.end()) throw PreconditionError("field 'sort' is required");
        return ops::SetSort{order_from_json(*it)};
    }
    if (tag == "setOrder") {
        auto it = j.find("order");
        if (it == j.end()) throw PreconditionError("field 'order' is required");
        return ops::SetOrder{order_from_json(*it)};
    }
    if (tag == "pathSort") return ops::PathSort{strings_field(j, "path")};
    if (tag == "setMatrixColumns") return ops::SetMatrixColumns{optional_strings(j, "columns")};
    if (tag == "setAttributeColumns") return ops::SetAttributeColumns{optional_strings(j, "columns")};
    if (tag == "select") return ops::Select{optional_string(j, "node")};
    throw PreconditionError("unknown operation '" + tag + "'");
}

std::vector<Operation> parse_operations(const json& j) {
    if (!j.is_array()) throw PreconditionError("operations must be an array");
    std::vector<Operation> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        try {
            out.push_back(parse_operation(j[i]));
        } catch (const Error& e) {
            throw OperationError(i, e.what());
        } catch (const json::exception& e) {
            throw OperationError(i, e.what());
        }
    }
    return out;
}

json to_json(const Operation& op) {
    return std::visit(
        [](const auto& o) -> json {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, ops::AddRoot>) return {{"op", "addRoot"}, {"node", optional_json(o.node)}};
            else if constexpr (std::is_same_v<T, ops::AddNode>)
                return {{"op", "addNode"}, {"node", o.node}, {"withNeighbors", o.with_neighbors}};
            else if constexpr (std::is_same_v<T, ops::ExpandMissing>) return {{"op", "expandMissing"}, {"node", o.node}};
            else if constexpr (std::is_same_v<T, ops::MakeRoot>) return {{"op", "makeRoot"}, {"node", o.node}};
            else if constexpr (std::is_same_v<T, ops::GatherChildren>) return {{"op", "gatherChildren"}, {"node", o.node}};
            else if constexpr (std::is_same_v<T, ops::RemoveBranch>) return {{"op", "removeBranch"}, {"node", o.node}};
            else if constexpr (std::is_same_v<T, ops::ReattachBranch>)
                return {{"op", "reattachBranch"}, {"node", o.node}, {"newParent", o.new_parent}};
            else if constexpr (std::is_same_v<T, ops::SetTypeFilters>)
                return {{"op", "setTypeFilters"}, {"excluded", o.excluded}};
            else if constexpr (std::is_same_v<T, ops::SetBranchMode>)
                return {{"op", "setBranchMode"}, {"node", o.node}, {"mode", std::string(to_string(o.mode))}};
            else if constexpr (std::is_same_v<T, ops::SetAggregation>)
                return {{"op", "setAggregation"}, {"node", o.node}, {"aggregate", o.aggregate}};
            else if constexpr (std::is_same_v<T, ops::SetDOI>)
                return {{"op", "setDOI"}, {"doi", o.doi ? to_json(*o.doi) : json(nullptr)}};
            else if constexpr (std::is_same_v<T, ops::SetSort>) return {{"op", "setSort"}, {"sort", to_json(o.sort)}};
            else if constexpr (std::is_same_v<T, ops::SetOrder>) return {{"op", "setOrder"}, {"order", to_json(o.order)}};
            else if constexpr (std::is_same_v<T, ops::PathSort>) return {{"op", "pathSort"}, {"path", o.path}};
            else if constexpr (std::is_same_v<T, ops::SetMatrixColumns>)
                return {{"op", "setMatrixColumns"}, {"columns", optional_json(o.columns)}};
            else if constexpr (std::is_same_v<T, ops::SetAttributeColumns>)
                return {{"op", "setAttributeColumns"}, {"columns", optional_json(o.columns)}};
            else if constexpr (std::is_same_v<T, ops::Select>) return {{"op", "select"}, {"node", optional_json(o.node)}};
            else static_assert(always_false<T>);
        },
        op);
}

void apply_operation(Session& session, const Operation& op) {
    std::visit(
        [&session](const auto& o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, ops::AddRoot>) {
                if (o.node)
                    session.add_root(std::string_view(*o.node));
                else
                    session.add_root(std::nullopt);
            } else if constexpr (std::is_same_v<T, ops::AddNode>) session.add_node(o.node, o.with_neighbors);
            else if constexpr (std::is_same_v<T, ops::ExpandMissing>) session.expand_missing_neighbors(o.node);
            else if constexpr (std::is_same_v<T, ops::MakeRoot>) session.make_root(o.node);
            else if constexpr (std::is_same_v<T, ops::GatherChildren>) session.gather_children(o.node);
            else if constexpr (std::is_same_v<T, ops::RemoveBranch>) session.remove_branch(o.node);
            else if constexpr (std::is_same_v<T, ops::ReattachBranch>) session.reattach_branch(o.node, o.new_parent);
            else if constexpr (std::is_same_v<T, ops::SetTypeFilters>) session.set_type_filters(o.excluded);
            else if constexpr (std::is_same_v<T, ops::SetBranchMode>) session.set_branch_mode(o.node, o.mode);
            else if constexpr (std::is_same_v<T, ops::SetAggregation>) session.set_aggregation(o.node, o.aggregate);
            else if constexpr (std::is_same_v<T, ops::SetDOI>) session.set_doi(o.doi);
            else if constexpr (std::is_same_v<T, ops::SetSort>) session.set_sort(o.sort);
            else if constexpr (std::is_same_v<T, ops::SetOrder>) session.set_order(o.order);
            else if constexpr (std::is_same_v<T, ops::PathSort>) session.path_sort(o.path);
            else if constexpr (std::is_same_v<T, ops::SetMatrixColumns>) session.set_matrix_columns(o.columns);
            else if constexpr (std::is_same_v<T, ops::SetAttributeColumns>) session.set_attribute_columns(o.columns);
            else if constexpr (std::is_same_v<T, ops::Select>) {
                if (o.node)
                    session.select(std::string_view(*o.node));
                else
                    session.select(std::nullopt);
            } else static_assert(always_false<T>);
        },
        op);
}

void apply_batch(Session& session, const std::vector<Operation>& batch) {
    if (batch.empty()) return;
    Session draft = session;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        try {
            apply_operation(draft, batch[i]);
        } catch (const Error& e) {
            throw OperationError(i, e.what());
        }
    }
    session = std::move(draft);
}

void apply_batch(Session& session, const json& batch) { apply_batch(session, parse_operations(batch)); }

}  // namespace grove
