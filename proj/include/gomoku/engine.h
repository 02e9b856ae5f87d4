#pragma once

#include "alphabeta.h"
#include "evaluator.h"
#include "mcts.h"
#include "tt.h"

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

namespace gomoku {

enum class Backend { Mcts, AlphaBeta };

std::string toString(Backend b);

struct EngineConfig
{
    std::string weights;        // empty: random network from `randomNet`/`randomSeed`
    std::string codebookCache;  // empty: always bake
    std::string randomNet  = "tiny";
    std::uint64_t randomSeed = 1;

    Backend     backend   = Backend::Mcts;
    mcts::Params mcts;
    ab::Params   alphabeta;
    std::size_t ttMiB     = 64;
    double      turnMs    = 5000;  // 0: no per-turn limit beyond the budgets
    double      matchMs   = 0;     // 0: unlimited
    int         boardSize = DefaultBoardSize;

    /// Throws EngineError(InvalidArgument) on unknown keys, wrong types or
    /// out-of-range values.
    static EngineConfig fromJson(std::string_view text);
    static EngineConfig fromFile(const std::string &path);
    std::string         toJson() const;

    void validate() const;
};

/// Net described by `cfg`: loaded weights or a seeded random network.
std::shared_ptr<const mixnet::Net> loadNet(const EngineConfig &cfg);

/// One playing engine: shared net, own evaluator, tree and table.
class Engine
{
public:
    Engine(const EngineConfig &cfg, std::shared_ptr<const mixnet::Net> net);
    explicit Engine(const EngineConfig &cfg) : Engine(cfg, loadNet(cfg)) {}

    const EngineConfig &config() const { return cfg_; }
    EngineConfig       &config() { return cfg_; }

    /// Search `board` with the configured backend. A positive `timeMs`
    /// overrides the configured limit. The returned move is always legal.
    SearchResult think(Board &board,
                       double             timeMs = 0,
                       const StopFlag    *stop   = nullptr,
                       const InfoCallback &info  = {});

    mixnet::Evaluation evaluate(const Board &board);

    /// Drop the table and reset the evaluator for a new game or board size.
    void newGame(int height, int width);

    std::shared_ptr<const mixnet::Net> net() const { return net_; }

private:
    EngineConfig                        cfg_;
    std::shared_ptr<const mixnet::Net> net_;
    std::unique_ptr<mixnet::Evaluator> eval_;
    TranspositionTable                  tt_;
};

}  // namespace gomoku
