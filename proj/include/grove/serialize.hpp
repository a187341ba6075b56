#pragma once
// JSON forms of the small value types shared by session state, operations
// and layout documents.

#include <nlohmann/json.hpp>

#include "grove/order.hpp"
#include "grove/view.hpp"

namespace grove {

nlohmann::json to_json(const OrderSpec& spec);
OrderSpec order_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AttributePredicate& predicate);
AttributePredicate predicate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DOIFunction& doi);
DOIFunction doi_from_json(const nlohmann::json& j);

nlohmann::json to_json(const LayoutConfig& config);
LayoutConfig layout_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AttributeValue& value);

}  // namespace grove
