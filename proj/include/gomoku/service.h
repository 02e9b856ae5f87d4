#pragma once

#include "engine.h"

#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace gomoku {

/// In-memory analysis service. Each handler returns an HTTP status and a
/// JSON body; `Server` exposes them over HTTP.
class AnalysisService
{
public:
    struct Response
    {
        int         status = 200;
        std::string body;
    };

    AnalysisService(const EngineConfig &cfg, std::shared_ptr<const mixnet::Net> net);

    Response createGame(const std::string &body);
    Response state(const std::string &id);
    Response move(const std::string &id, const std::string &body);
    Response analysis(const std::string &id, const std::string &budget);
    Response undo(const std::string &id);

private:
    struct Game;
    std::shared_ptr<Game> find(const std::string &id);

    EngineConfig                        cfg_;
    std::shared_ptr<const mixnet::Net> net_;
    std::mutex                          mutex_;
    std::map<std::string, std::shared_ptr<Game>> games_;
    std::uint64_t                       nextId_ = 1;
};

/// HTTP front end for an AnalysisService.
class Server
{
public:
    explicit Server(AnalysisService &service);
    ~Server();

    /// Bind to `host:port` (port 0: any free port). Returns the bound port
    /// or -1.
    int  bind(const std::string &host, int port);
    /// Serve until stop(). Call after bind().
    bool run();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace gomoku
