#pragma once
// Session operations as data: the op log shared by the CLI, the service and
// replay. JSON form is an object tagged by "op".

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "grove/error.hpp"
#include "grove/session.hpp"

namespace grove::ops {

struct AddRoot { std::optional<std::string> node; };
struct AddNode { std::string node; bool with_neighbors = false; };
struct ExpandMissing { std::string node; };
struct MakeRoot { std::string node; };
struct GatherChildren { std::string node; };
struct RemoveBranch { std::string node; };
struct ReattachBranch { std::string node; std::string new_parent; };
struct SetTypeFilters { std::set<std::string> excluded; };
struct SetBranchMode { std::string node; BranchMode mode = BranchMode::tree; };
struct SetAggregation { std::string node; bool aggregate = false; };
struct SetDOI { std::optional<DOIFunction> doi; };
struct SetSort { OrderSpec sort; };
struct SetOrder { OrderSpec order; };
struct PathSort { std::vector<std::string> path; };
struct SetMatrixColumns { std::optional<std::vector<std::string>> columns; };
struct SetAttributeColumns { std::optional<std::vector<std::string>> columns; };
struct Select { std::optional<std::string> node; };

}  // namespace grove::ops

namespace grove {

using Operation = std::variant<ops::AddRoot, ops::AddNode, ops::ExpandMissing, ops::MakeRoot, ops::GatherChildren,
                               ops::RemoveBranch, ops::ReattachBranch, ops::SetTypeFilters, ops::SetBranchMode,
                               ops::SetAggregation, ops::SetDOI, ops::SetSort, ops::SetOrder, ops::PathSort,
                               ops::SetMatrixColumns, ops::SetAttributeColumns, ops::Select>;

// Throws PreconditionError on an unknown tag or a malformed field.
Operation parse_operation(const nlohmann::json& j);
std::vector<Operation> parse_operations(const nlohmann::json& j);
nlohmann::json to_json(const Operation& op);

void apply_operation(Session& session, const Operation& op);

// A failed operation inside a batch; `index` is its position in the batch.
class OperationError : public Error {
public:
    OperationError(std::size_t index, const std::string& what)
        : Error("operation " + std::to_string(index) + ": " + what), index_(index), detail_(what) {}

    std::size_t index() const { return index_; }
    const std::string& detail() const { return detail_; }

private:
    std::size_t index_;
    std::string detail_;
};

// Applies every op or none: on failure `session` is left untouched and an
// OperationError names the failing op.
void apply_batch(Session& session, const std::vector<Operation>& batch);

// Parses and applies a JSON op array atomically; a malformed op is reported
// with its index like a failing one.
void apply_batch(Session& session, const nlohmann::json& batch);

}  // namespace grove
