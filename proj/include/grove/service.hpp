#pragma once
// HTTP+JSON front end over datasets and sessions.
//
// Sessions are persisted as {dataset, ops} op logs, one file per session,
// rewritten after every committed batch and replayed at startup.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "grove/graph.hpp"
#include "grove/operations.hpp"
#include "grove/session.hpp"

namespace httplib {
class Server;
}

namespace grove {

inline constexpr const char* kDataDirEnv = "GROVE_DATA_DIR";

struct Response {
    int status = 200;
    nlohmann::json body;
    // Pre-rendered body; used for layout documents so the bytes match the CLI.
    std::optional<std::string> text;

    std::string render() const;
};

class Service {
public:
    // `sessions_dir` enables persistence when set.
    explicit Service(std::filesystem::path data_dir, std::optional<std::filesystem::path> sessions_dir = std::nullopt);
    ~Service();

    Response list_datasets();
    Response search(const std::string& dataset, const std::string& query);
    Response create_session(const nlohmann::json& request);
    Response apply_ops(const std::string& id, const nlohmann::json& batch);
    Response layout(const std::string& id, const std::optional<std::string>& path_from = std::nullopt,
                    const std::optional<std::string>& path_to = std::nullopt);
    Response get_session(const std::string& id);
    Response paths(const std::string& id, const nlohmann::json& request);

    // Registers every route on `server`.
    void mount(httplib::Server& server);

    std::size_t session_count() const;

private:
    struct Entry {
        std::mutex mutex;
        std::string dataset;
        Session session;
        nlohmann::json log = nlohmann::json::array();

        Entry(std::string name, std::shared_ptr<const Graph> graph) : dataset(std::move(name)), session(std::move(graph)) {}
    };

    std::shared_ptr<const Graph> dataset(const std::string& name);
    std::shared_ptr<Entry> find_session(const std::string& id) const;
    nlohmann::json envelope(const std::string& id, const Entry& entry) const;
    void persist(const std::string& id, const Entry& entry) const;
    void restore();

    std::filesystem::path data_dir_;
    std::optional<std::filesystem::path> sessions_dir_;

    std::mutex datasets_mutex_;
    std::map<std::string, std::shared_ptr<const Graph>> datasets_;

    mutable std::shared_mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Entry>> sessions_;
    std::uint64_t next_id_ = 1;
};

}  // namespace grove
