#include <doctest.h>

#include <httplib.h>

#include <fstream>
#include <sstream>
#include <thread>

#include "grove/script.hpp"
#include "grove/service.hpp"
#include "support/support.hpp"

using namespace grove;
using namespace grove::testing;
using nlohmann::json;

namespace {

const json kFig2Ops = json::parse(R"([
    {"op": "addNode", "node": "A", "withNeighbors": true},
    {"op": "addNode", "node": "E"},
    {"op": "addNode", "node": "G"},
    {"op": "addRoot", "node": "A"},
    {"op": "setAggregation", "node": "D", "aggregate": true}
])");

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("grove-service-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// A service listening on an ephemeral local port for the lifetime of the object.
class LiveServer {
public:
    explicit LiveServer(Service& service) {
        service.mount(server_);
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~LiveServer() {
        server_.stop();
        thread_.join();
    }
    httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }

private:
    httplib::Server server_;
    int port_ = 0;
    std::thread thread_;
};

json body_of(const httplib::Result& r) {
    REQUIRE(r);
    return json::parse(r->body);
}

std::string create(httplib::Client& c, const std::string& dataset) {
    auto r = c.Post("/sessions", json{{"dataset", dataset}}.dump(), "application/json");
    REQUIRE(r);
    REQUIRE(r->status == 201);
    return json::parse(r->body).at("id").get<std::string>();
}

}  // namespace

TEST_CASE("datasets are listed and searchable") {
    Service service(data_dir());
    LiveServer live(service);
    auto c = live.client();
    json list = body_of(c.Get("/datasets"));
    REQUIRE(list.size() == 3);
    CHECK(list[0]["name"] == "coauthor-mini");
    CHECK(list[1]["name"] == "fig2");
    CHECK(list[1]["nodeCount"] == 7);

    json hits = body_of(c.Get("/datasets/got-mini/search?q=stark"));
    CHECK(hits["facets"]["Person"].size() == 5);
    CHECK(hits["facets"]["House"][0]["id"] == "house-stark");

    auto missing = c.Get("/datasets/atlantis/search?q=x");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body)["code"] == "not_found");
}

TEST_CASE("sessions accept operation batches and serve layouts") {
    Service service(data_dir());
    LiveServer live(service);
    auto c = live.client();
    const std::string id = create(c, "fig2");
    CHECK(id == "s1");

    auto ok = c.Post("/sessions/s1/ops", kFig2Ops.dump(), "application/json");
    REQUIRE(ok);
    CHECK(ok->status == 200);
    CHECK(json::parse(ok->body)["revision"] == 5);

    json layout = body_of(c.Get("/sessions/s1/layout?a=E&b=G"));
    CHECK(layout["rows"].size() == 6);
    CHECK(layout["paths"]["length"] == 3);

    json paths = body_of(c.Post("/sessions/s1/paths", R"({"a": "B", "b": "G"})", "application/json"));
    CHECK(paths["length"] == 2);
    CHECK(paths["revision"] == 5);

    json envelope = body_of(c.Get("/sessions/s1"));
    CHECK(envelope["dataset"] == "fig2");
    CHECK(envelope["revision"] == 5);
    CHECK(envelope.contains("state"));
}

TEST_CASE("a failing batch is rejected whole with the failing index") {
    Service service(data_dir());
    LiveServer live(service);
    auto c = live.client();
    create(c, "fig2");
    REQUIRE(c.Post("/sessions/s1/ops", kFig2Ops.dump(), "application/json"));
    const std::string before = c.Get("/sessions/s1/layout")->body;

    json bad = json::parse(R"([{"op": "addNode", "node": "F"}, {"op": "makeRoot", "node": "F"},
                               {"op": "reattachBranch", "node": "C", "newParent": "A"}])");
    auto r = c.Post("/sessions/s1/ops", bad.dump(), "application/json");
    REQUIRE(r);
    CHECK(r->status == 422);
    json error = json::parse(r->body);
    CHECK(error["code"] == "invalid_operation");
    CHECK(error["opIndex"] == 2);
    CHECK(c.Get("/sessions/s1/layout")->body == before);

    auto unknown_tag = c.Post("/sessions/s1/ops", R"([{"op": "warp"}])", "application/json");
    CHECK(unknown_tag->status == 422);
    CHECK(json::parse(unknown_tag->body)["opIndex"] == 0);
}

TEST_CASE("client errors map to 400 and 404") {
    Service service(data_dir());
    LiveServer live(service);
    auto c = live.client();
    CHECK(c.Get("/sessions/s9")->status == 404);
    CHECK(c.Get("/sessions/s9/layout")->status == 404);
    CHECK(c.Post("/sessions/s9/ops", "[]", "application/json")->status == 404);
    CHECK(c.Post("/sessions", R"({"dataset": "atlantis"})", "application/json")->status == 404);
    CHECK(c.Post("/sessions", R"({"name": "fig2"})", "application/json")->status == 400);
    CHECK(c.Post("/sessions", "{oops", "application/json")->status == 400);
    create(c, "fig2");
    CHECK(c.Post("/sessions/s1/paths", R"({"a": "A"})", "application/json")->status == 400);
    CHECK(c.Post("/sessions/s1/paths", R"({"a": "A", "b": "Q"})", "application/json")->status == 404);
}

TEST_CASE("sessions are replayed from their op logs") {
    auto dir = scratch("persist");
    std::string layout_before;
    {
        Service service(data_dir(), dir);
        CHECK(service.create_session({{"dataset", "fig2"}}).status == 201);
        CHECK(service.apply_ops("s1", kFig2Ops).status == 200);
        CHECK(service.apply_ops("s1", json::parse(R"([{"op": "makeRoot", "node": "nowhere"}])")).status == 422);
        CHECK(service.create_session({{"dataset", "got-mini"}}).status == 201);
        layout_before = *service.layout("s1").text;
    }
    json saved;
    std::ifstream(dir / "s1.json") >> saved;
    CHECK(saved["dataset"] == "fig2");
    CHECK(saved["ops"].size() == kFig2Ops.size());

    Service revived(data_dir(), dir);
    CHECK(revived.session_count() == 2);
    CHECK(*revived.layout("s1").text == layout_before);
    Response next = revived.create_session({{"dataset", "fig2"}});
    CHECK(next.body["id"] == "s3");
}

TEST_CASE("concurrent batches on separate sessions do not interfere") {
    Service service(data_dir());
    LiveServer live(service);
    std::vector<std::string> ids;
    {
        auto c = live.client();
        for (int i = 0; i < 4; ++i) ids.push_back(create(c, "fig2"));
    }
    std::vector<std::thread> workers;
    std::atomic<int> failures{0};
    for (const auto& id : ids) {
        workers.emplace_back([&, id] {
            auto c = live.client();
            if (c.Post("/sessions/" + id + "/ops", kFig2Ops.dump(), "application/json")->status != 200) ++failures;
            for (int k = 0; k < 10; ++k) {
                json op = json::array({{{"op", "makeRoot"}, {"node", k % 2 ? "B" : "A"}}});
                if (c.Post("/sessions/" + id + "/ops", op.dump(), "application/json")->status != 200) ++failures;
            }
        });
    }
    for (auto& w : workers) w.join();
    CHECK(failures == 0);
    auto c = live.client();
    for (const auto& id : ids) CHECK(body_of(c.Get("/sessions/" + id))["revision"] == 15);
}

TEST_CASE("command-line and service layouts are byte-identical") {
    auto dir = scratch("parity");
    auto script = dir / "script.json";
    std::ofstream(script) << json{{"dataset", "fig2"}, {"ops", kFig2Ops}}.dump();
    REQUIRE(run(script, data_dir(), dir / "out.json").exit_code == kExitOk);
    std::ifstream in(dir / "out.json", std::ios::binary);
    std::stringstream cli;
    cli << in.rdbuf();

    Service service(data_dir());
    LiveServer live(service);
    auto c = live.client();
    create(c, "fig2");
    REQUIRE(c.Post("/sessions/s1/ops", kFig2Ops.dump(), "application/json")->status == 200);
    CHECK(c.Get("/sessions/s1/layout")->body == cli.str());
}
