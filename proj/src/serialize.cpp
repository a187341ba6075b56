#include "grove/serialize.hpp"

#include "grove/error.hpp"

namespace grove {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw PreconditionError(std::string("missing field '") + name + "'");
    return *it;
}

std::optional<double> optional_number(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw PreconditionError(std::string("field '") + name + "' must be a number");
    return it->get<double>();
}

json optional_number_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

json to_json(const OrderSpec& spec) {
    json j{{"key", std::string(to_string(spec.key))},
           {"direction", spec.direction == Direction::ascending ? "ascending" : "descending"}};
    if (spec.key == OrderKey::attribute) j["attribute"] = spec.attribute;
    return j;
}

OrderSpec order_from_json(const json& j) {
    if (!j.is_object()) throw PreconditionError("sort spec must be an object");
    OrderSpec spec;
    spec.key = parse_order_key(field(j, "key").get<std::string>());
    if (spec.key == OrderKey::attribute) spec.attribute = field(j, "attribute").get<std::string>();
    std::string direction = j.value("direction", "ascending");
    if (direction == "ascending" || direction == "asc")
        spec.direction = Direction::ascending;
    else if (direction == "descending" || direction == "desc")
        spec.direction = Direction::descending;
    else
        throw PreconditionError("unknown sort direction '" + direction + "'");
    return spec;
}

json to_json(const AttributePredicate& predicate) {
    json j{{"attribute", predicate.attribute},
           {"min", optional_number_json(predicate.min)},
           {"max", optional_number_json(predicate.max)}};
    if (predicate.categories) j["categories"] = *predicate.categories;
    return j;
}

AttributePredicate predicate_from_json(const json& j) {
    if (!j.is_object()) throw PreconditionError("predicate must be an object");
    AttributePredicate predicate;
    predicate.attribute = field(j, "attribute").get<std::string>();
    predicate.min = optional_number(j, "min");
    predicate.max = optional_number(j, "max");
    if (auto it = j.find("categories"); it != j.end() && !it->is_null())
        predicate.categories = it->get<std::set<std::string>>();
    return predicate;
}

json to_json(const DOIFunction& doi) {
    json j = to_json(doi.predicate);
    j["types"] = doi.types;
    return j;
}

DOIFunction doi_from_json(const json& j) {
    DOIFunction doi;
    doi.predicate = predicate_from_json(j);
    if (auto it = j.find("types"); it != j.end() && !it->is_null()) doi.types = it->get<std::set<std::string>>();
    return doi;
}

json to_json(const LayoutConfig& config) {
    json modes = json::object();
    for (const auto& [id, mode] : config.modes) modes[id] = std::string(to_string(mode));
    json j{{"modes", modes},
           {"aggregate", config.aggregate},
           {"doi", config.doi ? to_json(*config.doi) : json(nullptr)},
           {"sort", to_json(config.sort)},
           {"pinnedPath", config.pinned_path},
           {"matrixColumns", config.matrix_columns ? json(*config.matrix_columns) : json(nullptr)},
           {"attributeColumns", config.attribute_columns ? json(*config.attribute_columns) : json(nullptr)}};
    return j;
}

LayoutConfig layout_config_from_json(const json& j) {
    LayoutConfig config;
    const json modes = j.value("modes", json::object());
    for (const auto& [id, mode] : modes.items()) config.modes[id] = parse_branch_mode(mode.get<std::string>());
    const json aggregate = j.value("aggregate", json::object());
    for (const auto& [id, flag] : aggregate.items()) config.aggregate[id] = flag.get<bool>();
    if (auto it = j.find("doi"); it != j.end() && !it->is_null()) config.doi = doi_from_json(*it);
    if (auto it = j.find("sort"); it != j.end()) config.sort = order_from_json(*it);
    config.pinned_path = j.value("pinnedPath", std::vector<std::string>{});
    if (auto it = j.find("matrixColumns"); it != j.end() && !it->is_null())
        config.matrix_columns = it->get<std::vector<std::string>>();
    if (auto it = j.find("attributeColumns"); it != j.end() && !it->is_null())
        config.attribute_columns = it->get<std::vector<std::string>>();
    return config;
}

json to_json(const AttributeValue& value) {
    return std::visit([](const auto& v) { return json(v); }, value);
}

}  // namespace grove
