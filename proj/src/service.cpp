#include "gomoku/service.h"

#include <httplib.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>

namespace gomoku {

using nlohmann::json;

struct AnalysisService::Game
{
    std::mutex              mutex;
    std::string             id;
    Board                   board;
    Color                   human = Color::Black;
    std::unique_ptr<Engine> engine;
    std::uint64_t           revision = 0;
};

namespace {

constexpr int           TopK      = 10;
constexpr std::uint64_t MaxBudget = 1000000;

json pos(Pos p)
{
    return {{"row", p.row}, {"col", p.col}};
}

const char *colorName(Color c)
{
    return c == Color::Black ? "black" : "white";
}

const char *outcomeName(GameOutcome o)
{
    switch (o) {
    case GameOutcome::BlackWin: return "black";
    case GameOutcome::WhiteWin: return "white";
    case GameOutcome::Draw: return "draw";
    default: return "ongoing";
    }
}

json valueJson(const mixnet::ValueTriple &v)
{
    return {{"win", v.win}, {"loss", v.loss}, {"draw", v.draw}};
}

AnalysisService::Response fail(int status, const std::string &msg)
{
    return {status, json {{"error", msg}}.dump()};
}

}  // namespace

AnalysisService::AnalysisService(const EngineConfig &cfg, std::shared_ptr<const mixnet::Net> net)
    : cfg_(cfg)
    , net_(std::move(net))
{
    cfg_.validate();
}

std::shared_ptr<AnalysisService::Game> AnalysisService::find(const std::string &id)
{
    std::lock_guard lock(mutex_);
    auto            it = games_.find(id);
    return it == games_.end() ? nullptr : it->second;
}

namespace {

json gameJson(const Board &b, const std::string &id, Color human, std::uint64_t revision)
{
    json moves = json::array();
    for (const Move &m : b.history())
        moves.push_back(pos(m.pos));
    return {{"id", id},
            {"height", b.height()},
            {"width", b.width()},
            {"humanColor", colorName(human)},
            {"toMove", colorName(b.sideToMove())},
            {"outcome", outcomeName(b.outcome())},
            {"moves", moves},
            {"revision", revision}};
}

}  // namespace

AnalysisService::Response AnalysisService::createGame(const std::string &body)
{
    int   size  = cfg_.boardSize;
    Color human = Color::Black;
    if (!body.empty()) {
        json j = json::parse(body, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            return fail(400, "body must be a JSON object");
        for (auto &[k, v] : j.items()) {
            if (k == "size") {
                if (!v.is_number_integer())
                    return fail(400, "size must be an integer");
                size = v.get<int>();
                if (size < MinBoardSize || size > MaxBoardSize)
                    return fail(400, "size out of range");
            }
            else if (k == "humanColor") {
                if (v == "black")
                    human = Color::Black;
                else if (v == "white")
                    human = Color::White;
                else
                    return fail(400, "humanColor must be \"black\" or \"white\"");
            }
            else
                return fail(400, "unknown key " + k);
        }
    }

    auto g     = std::make_shared<Game>();
    g->board   = Board(size, size);
    g->human   = human;
    EngineConfig ec = cfg_;
    ec.boardSize    = size;
    ec.ttMiB        = std::min<std::size_t>(ec.ttMiB, 16);
    g->engine       = std::make_unique<Engine>(ec, net_);
    {
        std::lock_guard lock(mutex_);
        g->id = std::to_string(nextId_++);
        games_[g->id] = g;
    }

    std::lock_guard lock(g->mutex);
    json            reply = nullptr;
    if (human == Color::White) {
        Board work = g->board;
        Pos   p    = g->engine->think(work).best;
        g->board.place(p);
        reply = pos(p);
    }
    json out     = gameJson(g->board, g->id, g->human, g->revision);
    out["reply"] = reply;
    return {200, out.dump()};
}

AnalysisService::Response AnalysisService::state(const std::string &id)
{
    auto g = find(id);
    if (!g)
        return fail(404, "unknown game " + id);
    std::lock_guard lock(g->mutex);
    return {200, gameJson(g->board, g->id, g->human, g->revision).dump()};
}

AnalysisService::Response AnalysisService::move(const std::string &id, const std::string &body)
{
    auto g = find(id);
    if (!g)
        return fail(404, "unknown game " + id);

    json j = json::parse(body, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("row") || !j.contains("col")
        || !j["row"].is_number_integer() || !j["col"].is_number_integer() || j.size() != 2)
        return fail(400, "body must be {\"row\": int, \"col\": int}");
    Pos p {j["row"].get<int>(), j["col"].get<int>()};

    std::lock_guard lock(g->mutex);
    Board          &b = g->board;
    if (b.outcome() != GameOutcome::Ongoing)
        return fail(409, "game is over");
    if (b.sideToMove() != g->human)
        return fail(409, "not the human's turn");
    MoveStatus s = b.place(p);
    if (s != MoveStatus::Ok)
        return fail(409, "illegal move: " + toString(s));

    json reply = nullptr;
    if (b.outcome() == GameOutcome::Ongoing) {
        Board work = b;
        Pos   r    = g->engine->think(work).best;
        b.place(r);
        reply = pos(r);
    }
    g->revision++;

    json out     = gameJson(b, g->id, g->human, g->revision);
    out["move"]  = pos(p);
    out["reply"] = reply;
    if (b.outcome() == GameOutcome::Ongoing) {
        auto ev           = g->engine->evaluate(b);
        out["evaluation"] = {{"value", valueJson(ev.value)}, {"utility", ev.value.utility()}};
    }
    else
        out["evaluation"] = nullptr;
    return {200, out.dump()};
}

AnalysisService::Response AnalysisService::analysis(const std::string &id, const std::string &budget)
{
    auto g = find(id);
    if (!g)
        return fail(404, "unknown game " + id);

    std::uint64_t n = 0;
    if (!budget.empty()) {
        auto r = std::from_chars(budget.data(), budget.data() + budget.size(), n);
        if (r.ec != std::errc {} || r.ptr != budget.data() + budget.size() || n == 0 || n > MaxBudget)
            return fail(400, "budget must be an integer in [1, 1000000]");
    }

    std::lock_guard lock(g->mutex);
    Board          &b = g->board;
    if (b.outcome() != GameOutcome::Ongoing)
        return fail(409, "game is over");

    Engine       &e   = *g->engine;
    EngineConfig  old = e.config();
    if (n) {
        e.config().mcts.playouts    = n;
        e.config().alphabeta.maxDepth = static_cast<int>(std::min<std::uint64_t>(n, 20));
    }
    Board        work = b;
    SearchResult sr   = e.think(work);
    e.config()        = old;

    auto ev = e.evaluate(b);
    std::vector<int> cells;
    for (int i = 0; i < b.cellCount(); i++)
        if (ev.policy[i] > 0)
            cells.push_back(i);
    std::stable_sort(cells.begin(), cells.end(),
                     [&](int x, int y) { return ev.policy[x] > ev.policy[y]; });
    if (cells.size() > TopK)
        cells.resize(TopK);
    json policy = json::array();
    for (int i : cells) {
        json c = pos(b.pos(i));
        c["p"] = ev.policy[i];
        policy.push_back(c);
    }
    json pv = json::array();
    for (Pos p : sr.pv)
        pv.push_back(pos(p));

    json out = {{"id", g->id},
                {"toMove", colorName(b.sideToMove())},
                {"revision", g->revision},
                {"value", valueJson(ev.value)},
                {"utility", ev.value.utility()},
                {"policy", policy},
                {"best", pos(sr.best)},
                {"pv", pv},
                {"searchUtility", sr.utility},
                {"nodes", sr.nodes},
                {"backend", toString(e.config().backend)}};
    return {200, out.dump()};
}

AnalysisService::Response AnalysisService::undo(const std::string &id)
{
    auto g = find(id);
    if (!g)
        return fail(404, "unknown game " + id);
    std::lock_guard lock(g->mutex);
    Board          &b = g->board;

    bool humanMoved = false;
    for (const Move &m : b.history())
        humanMoved |= m.color == g->human;
    if (!humanMoved)
        return fail(409, "no human move to undo");
    for (;;) {
        Color last = b.history().back().color;
        b.undo();
        if (last == g->human)
            break;
    }
    g->revision++;
    return {200, gameJson(b, g->id, g->human, g->revision).dump()};
}

struct Server::Impl
{
    httplib::Server http;
};

Server::Server(AnalysisService &service) : impl_(std::make_unique<Impl>())
{
    auto send = [](httplib::Response &res, const AnalysisService::Response &r) {
        res.status = r.status;
        res.set_content(r.body, "application/json");
    };
    auto &http = impl_->http;
    http.Post("/game", [&service, send](const httplib::Request &req, httplib::Response &res) {
        send(res, service.createGame(req.body));
    });
    http.Get(R"(/game/([^/]+))", [&service, send](const httplib::Request &req, httplib::Response &res) {
        send(res, service.state(req.matches[1]));
    });
    http.Post(R"(/game/([^/]+)/move)",
              [&service, send](const httplib::Request &req, httplib::Response &res) {
                  send(res, service.move(req.matches[1], req.body));
              });
    http.Get(R"(/game/([^/]+)/analysis)",
             [&service, send](const httplib::Request &req, httplib::Response &res) {
                 send(res, service.analysis(req.matches[1], req.get_param_value("budget")));
             });
    http.Post(R"(/game/([^/]+)/undo)",
              [&service, send](const httplib::Request &req, httplib::Response &res) {
                  send(res, service.undo(req.matches[1]));
              });
    http.set_exception_handler([](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
        std::string msg = "internal error";
        try {
            std::rethrow_exception(ep);
        }
        catch (const std::exception &e) {
            msg = e.what();
        }
        catch (...) {
        }
        res.status = 500;
        res.set_content(json {{"error", msg}}.dump(), "application/json");
    });
}

Server::~Server() = default;

int Server::bind(const std::string &host, int port)
{
    if (port == 0)
        return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool Server::run()
{
    return impl_->http.listen_after_bind();
}

void Server::stop()
{
    impl_->http.stop();
}

}  // namespace gomoku
