#include "../nets.h"
#include "doctest.h"
#include "gomoku/service.h"

#include <httplib.h>
#include <json.hpp>

#include <thread>

using namespace gomoku;
using nlohmann::json;

namespace {

struct Fixture
{
    AnalysisService service;
    Server          server;
    int             port;
    std::thread     thread;
    httplib::Client client;

    static EngineConfig config()
    {
        EngineConfig c;
        c.mcts.playouts = 32;
        c.ttMiB         = 1;
        c.turnMs        = 0;
        return c;
    }

    Fixture()
        : service(config(), testutil::tinyNet())
        , server(service)
        , port(server.bind("127.0.0.1", 0))
        , thread([this] { server.run(); })
        , client("127.0.0.1", port)
    {
        REQUIRE(port > 0);
        for (int i = 0; i < 200 && !client.Get("/game/none"); i++)
            std::this_thread::sleep_for(std::chrono::milliseconds(5));
    }

    ~Fixture()
    {
        server.stop();
        thread.join();
    }

    std::pair<int, json> post(const std::string &path, const std::string &body)
    {
        auto r = client.Post(path, body, "application/json");
        REQUIRE(r);
        return {r->status, json::parse(r->body)};
    }

    std::pair<int, json> get(const std::string &path)
    {
        auto r = client.Get(path);
        REQUIRE(r);
        return {r->status, json::parse(r->body)};
    }
};

}  // namespace

TEST_CASE("service: new game, moves, analysis and undo over HTTP")
{
    Fixture f;

    auto [s0, game] = f.post("/game", "");
    REQUIRE(s0 == 200);
    CHECK(game["toMove"] == "black");
    CHECK(game["id"].is_string());
    std::string id = game["id"];

    auto [s1, mv] = f.post("/game/" + id + "/move", R"({"row":7,"col":7})");
    REQUIRE(s1 == 200);
    CHECK(mv["move"] == json {{"row", 7}, {"col", 7}});
    REQUIRE(mv["reply"].is_object());
    CHECK(mv["moves"].size() == 2);
    CHECK(mv["toMove"] == "black");
    auto v = mv["evaluation"]["value"];
    CHECK(v["win"].get<double>() + v["loss"].get<double>() + v["draw"].get<double>()
          == doctest::Approx(1.0).epsilon(1e-6));

    // Occupied cell: 409 and nothing changes.
    auto [s2, err] = f.post("/game/" + id + "/move", R"({"row":7,"col":7})");
    CHECK(s2 == 409);
    CHECK(err.contains("error"));
    auto [s3, st] = f.get("/game/" + id);
    CHECK(s3 == 200);
    CHECK(st["moves"] == mv["moves"]);
    CHECK(st["revision"] == mv["revision"]);

    auto [s4, an] = f.get("/game/" + id + "/analysis?budget=50");
    REQUIRE(s4 == 200);
    auto tv = an["value"];
    CHECK(std::abs(tv["win"].get<double>() + tv["loss"].get<double>() + tv["draw"].get<double>() - 1.0)
          <= 1e-6);
    CHECK(an["policy"].size() == 10);
    double prev = 1.0;
    for (auto &c : an["policy"]) {
        CHECK(c["p"].get<double>() <= prev);
        prev = c["p"];
        CHECK(!(c["row"] == 7 && c["col"] == 7));
    }
    CHECK(an["pv"].size() >= 1);
    CHECK(an["pv"][0] == an["best"]);
    CHECK(an["nodes"] == 50);

    auto [s5, un] = f.post("/game/" + id + "/undo", "");
    CHECK(s5 == 200);
    CHECK(un["moves"].empty());
    CHECK(un["toMove"] == "black");
    auto [s6, un2] = f.post("/game/" + id + "/undo", "");
    CHECK(s6 == 409);
}

TEST_CASE("service: error statuses")
{
    Fixture f;
    CHECK(f.get("/game/404").first == 404);
    CHECK(f.post("/game/404/move", R"({"row":1,"col":1})").first == 404);
    CHECK(f.get("/game/404/analysis").first == 404);
    CHECK(f.post("/game/404/undo", "").first == 404);

    std::string id = f.post("/game", R"({"size":9})").second["id"];
    CHECK(f.post("/game/" + id + "/move", "not json").first == 400);
    CHECK(f.post("/game/" + id + "/move", R"({"row":1})").first == 400);
    CHECK(f.post("/game/" + id + "/move", R"({"row":"1","col":2})").first == 400);
    CHECK(f.post("/game/" + id + "/move", R"({"row":9,"col":0})").first == 409);
    CHECK(f.get("/game/" + id + "/analysis?budget=abc").first == 400);
    CHECK(f.get("/game/" + id + "/analysis?budget=0").first == 400);
    CHECK(f.post("/game", R"({"size":99})").first == 400);
    CHECK(f.post("/game", R"({"colour":"red"})").first == 400);
}

TEST_CASE("service: engine opens when the human plays white")
{
    Fixture f;
    auto [s, g] = f.post("/game", R"({"humanColor":"white"})");
    REQUIRE(s == 200);
    CHECK(g["reply"].is_object());
    CHECK(g["moves"].size() == 1);
    CHECK(g["toMove"] == "white");
    CHECK(f.post("/game/" + g["id"].get<std::string>() + "/undo", "").first == 409);
}

TEST_CASE("service: a finished game rejects moves and analysis")
{
    AnalysisService svc(Fixture::config(), testutil::tinyNet());
    std::string     id = json::parse(svc.createGame(R"({"size":5})").body)["id"];
    // Play the first legal cell each time until the game ends.
    for (int i = 0; i < 25; i++) {
        auto st = json::parse(svc.state(id).body);
        if (st["outcome"] != "ongoing")
            break;
        for (int cell = 0; cell < 25; cell++) {
            json m = {{"row", cell / 5}, {"col", cell % 5}};
            if (svc.move(id, m.dump()).status == 200)
                break;
        }
    }
    auto st = json::parse(svc.state(id).body);
    REQUIRE(st["outcome"] != "ongoing");
    CHECK(svc.move(id, R"({"row":0,"col":0})").status == 409);
    CHECK(svc.analysis(id, "").status == 409);
}
