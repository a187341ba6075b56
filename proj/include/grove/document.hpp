#pragma once
// The layout document: rows plus every row-aligned view, as one JSON value.
// CLI output and service responses are this document dumped with
// dump_document, so equal sessions give byte-identical text.

#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "grove/attributes.hpp"
#include "grove/layout.hpp"
#include "grove/session.hpp"
#include "grove/topology.hpp"

namespace grove {

struct DocumentOptions {
    // Adds a "paths" entry with all shortest paths between the two node ids.
    std::optional<std::pair<std::string, std::string>> paths;
};

nlohmann::json layout_document(const Session& session, const DocumentOptions& options = {});

nlohmann::json to_json(const Session& session, const PathResult& result);
nlohmann::json to_json(const Session& session, const std::vector<HiddenEdge>& edges);
nlohmann::json to_json(const AttributeTable& table);
nlohmann::json to_json(const Histogram& histogram);

// Canonical text form: two-space indentation and a trailing newline.
std::string dump_document(const nlohmann::json& document);

}  // namespace grove
