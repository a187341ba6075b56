#include "grove/service.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>

#include <httplib.h>

#include "grove/document.hpp"

namespace grove {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

Response error(int status, std::string code, const std::string& message, std::optional<std::size_t> op = {}) {
    json body{{"code", std::move(code)}, {"message", message}};
    if (op) body["opIndex"] = *op;
    return {status, std::move(body), std::nullopt};
}

Response not_found(const std::string& what) { return error(404, "not_found", what); }

bool is_dataset_dir(const fs::path& dir) { return fs::is_regular_file(dir / "schema.json"); }

bool valid_name(const std::string& name) {
    return !name.empty() && name != "." && name != ".." && name.find('/') == std::string::npos &&
           name.find('\\') == std::string::npos;
}

// Maps exceptions escaping a handler to error responses.
template <typename Fn>
Response guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const OperationError& e) {
        return error(422, "invalid_operation", e.detail(), e.index());
    } catch (const NotFound& e) {
        return not_found(e.what());
    } catch (const LoadError& e) {
        return error(500, "load_error", e.what());
    } catch (const Error& e) {
        return error(422, "invalid_request", e.what());
    } catch (const json::exception& e) {
        return error(400, "bad_request", e.what());
    }
}

}  // namespace

std::string Response::render() const { return text ? *text : body.dump(2) + "\n"; }

Service::Service(fs::path data_dir, std::optional<fs::path> sessions_dir)
    : data_dir_(std::move(data_dir)), sessions_dir_(std::move(sessions_dir)) {
    if (sessions_dir_) {
        fs::create_directories(*sessions_dir_);
        restore();
    }
}

Service::~Service() = default;

std::shared_ptr<const Graph> Service::dataset(const std::string& name) {
    if (!valid_name(name) || !is_dataset_dir(data_dir_ / name)) throw NotFound("unknown dataset '" + name + "'");
    std::lock_guard lock(datasets_mutex_);
    auto it = datasets_.find(name);
    if (it != datasets_.end()) return it->second;
    auto graph = std::make_shared<const Graph>(load_dataset(data_dir_ / name));
    datasets_.emplace(name, graph);
    return graph;
}

std::shared_ptr<Service::Entry> Service::find_session(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
    return it->second;
}

std::size_t Service::session_count() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
}

json Service::envelope(const std::string& id, const Entry& entry) const {
    return {{"id", id},
            {"dataset", entry.dataset},
            {"revision", entry.session.revision()},
            {"state", entry.session.to_state()}};
}

void Service::persist(const std::string& id, const Entry& entry) const {
    if (!sessions_dir_) return;
    const fs::path target = *sessions_dir_ / (id + ".json");
    const fs::path temp = *sessions_dir_ / (id + ".json.tmp");
    {
        std::ofstream out(temp, std::ios::binary);
        out << json{{"dataset", entry.dataset}, {"ops", entry.log}}.dump(2) << "\n";
    }
    fs::rename(temp, target);
}

void Service::restore() {
    std::vector<fs::path> files;
    for (const auto& item : fs::directory_iterator(*sessions_dir_))
        if (item.path().extension() == ".json") files.push_back(item.path());
    std::sort(files.begin(), files.end());
    for (const auto& file : files) {
        const std::string id = file.stem().string();
        try {
            std::ifstream in(file);
            json saved = json::parse(in);
            auto entry = std::make_shared<Entry>(saved.at("dataset").get<std::string>(),
                                                 dataset(saved.at("dataset").get<std::string>()));
            apply_batch(entry->session, saved.at("ops"));
            entry->log = saved.at("ops");
            sessions_.emplace(id, std::move(entry));
            if (id.size() > 1 && id[0] == 's' && std::all_of(id.begin() + 1, id.end(), ::isdigit))
                next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
        } catch (const std::exception& e) {
            std::cerr << "skipping session " << file << ": " << e.what() << "\n";
        }
    }
}

Response Service::list_datasets() {
    std::vector<std::string> names;
    if (fs::is_directory(data_dir_))
        for (const auto& item : fs::directory_iterator(data_dir_))
            if (item.is_directory() && is_dataset_dir(item.path())) names.push_back(item.path().filename().string());
    std::sort(names.begin(), names.end());
    json out = json::array();
    for (const auto& name : names) {
        Response r = guarded([&]() -> Response {
            auto graph = dataset(name);
            json types = json::array();
            for (const auto& t : graph->node_types()) types.push_back(t.name);
            return {200,
                    {{"name", name},
                     {"nodeCount", graph->node_count()},
                     {"edgeCount", graph->edge_count()},
                     {"nodeTypes", std::move(types)}},
                    std::nullopt};
        });
        if (r.status == 200) out.push_back(std::move(r.body));
    }
    return {200, std::move(out), std::nullopt};
}

Response Service::search(const std::string& name, const std::string& query) {
    return guarded([&]() -> Response {
        auto graph = dataset(name);
        json facets = json::object();
        for (const auto& [type, hits] : graph->search_faceted(query)) {
            json list = json::array();
            for (const auto& hit : hits)
                list.push_back({{"id", hit.node_id}, {"label", hit.label}, {"degree", hit.degree}});
            facets[type] = std::move(list);
        }
        return {200, {{"query", query}, {"facets", std::move(facets)}}, std::nullopt};
    });
}

Response Service::create_session(const json& request) {
    return guarded([&]() -> Response {
        if (!request.is_object() || !request.contains("dataset") || !request.at("dataset").is_string())
            return error(400, "bad_request", "body needs a 'dataset' string");
        const std::string name = request.at("dataset").get<std::string>();
        auto entry = std::make_shared<Entry>(name, dataset(name));
        std::string id;
        {
            std::unique_lock lock(sessions_mutex_);
            id = "s" + std::to_string(next_id_++);
            sessions_.emplace(id, entry);
        }
        std::lock_guard guard(entry->mutex);
        persist(id, *entry);
        return {201, envelope(id, *entry), std::nullopt};
    });
}

Response Service::get_session(const std::string& id) {
    return guarded([&]() -> Response {
        auto entry = find_session(id);
        std::lock_guard guard(entry->mutex);
        return {200, envelope(id, *entry), std::nullopt};
    });
}

Response Service::apply_ops(const std::string& id, const json& batch) {
    return guarded([&]() -> Response {
        auto entry = find_session(id);
        std::lock_guard guard(entry->mutex);
        std::vector<Operation> ops = parse_operations(batch);
        apply_batch(entry->session, ops);
        for (const auto& op : ops) entry->log.push_back(to_json(op));
        if (!ops.empty()) persist(id, *entry);
        return {200, {{"id", id}, {"revision", entry->session.revision()}}, std::nullopt};
    });
}

Response Service::layout(const std::string& id, const std::optional<std::string>& path_from,
                         const std::optional<std::string>& path_to) {
    return guarded([&]() -> Response {
        auto entry = find_session(id);
        std::lock_guard guard(entry->mutex);
        DocumentOptions options;
        if (path_from && path_to) options.paths = {*path_from, *path_to};
        return {200, nullptr, dump_document(layout_document(entry->session, options))};
    });
}

Response Service::paths(const std::string& id, const json& request) {
    return guarded([&]() -> Response {
        auto entry = find_session(id);
        if (!request.is_object() || !request.contains("a") || !request.contains("b"))
            return error(400, "bad_request", "body needs node ids 'a' and 'b'");
        std::lock_guard guard(entry->mutex);
        const Session& session = entry->session;
        NodeIndex a = session.graph().require_node(request.at("a").get<std::string>());
        NodeIndex b = session.graph().require_node(request.at("b").get<std::string>());
        json body = to_json(session, all_shortest_paths(session, a, b));
        body["revision"] = session.revision();
        return {200, std::move(body), std::nullopt};
    });
}

void Service::mount(httplib::Server& server) {
    auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.render(), "application/json");
    };
    auto parse_body = [](const httplib::Request& req) -> std::optional<json> {
        try {
            return req.body.empty() ? json::object() : json::parse(req.body);
        } catch (const json::parse_error&) {
            return std::nullopt;
        }
    };
    auto bad_json = [send](httplib::Response& res) { send(res, error(400, "bad_request", "body is not valid JSON")); };

    server.Get("/datasets", [this, send](const httplib::Request&, httplib::Response& res) { send(res, list_datasets()); });
    server.Get(R"(/datasets/([^/]+)/search)", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, search(req.matches[1], req.has_param("q") ? req.get_param_value("q") : std::string()));
    });
    server.Post("/sessions", [this, send, parse_body, bad_json](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req);
        if (!body) return bad_json(res);
        send(res, create_session(*body));
    });
    server.Get(R"(/sessions/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
        send(res, get_session(req.matches[1]));
    });
    server.Post(R"(/sessions/([^/]+)/ops)",
                [this, send, parse_body, bad_json](const httplib::Request& req, httplib::Response& res) {
                    auto body = parse_body(req);
                    if (!body) return bad_json(res);
                    send(res, apply_ops(req.matches[1], *body));
                });
    server.Get(R"(/sessions/([^/]+)/layout)", [this, send](const httplib::Request& req, httplib::Response& res) {
        std::optional<std::string> a, b;
        if (req.has_param("a")) a = req.get_param_value("a");
        if (req.has_param("b")) b = req.get_param_value("b");
        send(res, layout(req.matches[1], a, b));
    });
    server.Post(R"(/sessions/([^/]+)/paths)",
                [this, send, parse_body, bad_json](const httplib::Request& req, httplib::Response& res) {
                    auto body = parse_body(req);
                    if (!body) return bad_json(res);
                    send(res, paths(req.matches[1], *body));
                });
}

}  // namespace grove
