#pragma once

#include "heads.h"
#include "types.h"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <vector>

namespace gomoku {

struct RootMoveStat
{
    Pos           move;
    float         prior  = 0;
    std::uint32_t visits = 0;
    double        q      = 0;  // mover's utility
};

struct SearchResult
{
    Pos                       best;
    std::vector<Pos>          pv;
    double                    utility = 0;  // root side to move, in [-1, 1]
    int                       score   = 0;  // alpha-beta centi-value
    int                       depth   = 0;
    std::uint64_t             nodes   = 0;  // alpha-beta nodes or MCTS playouts
    double                    elapsedMs = 0;
    mixnet::ValueTriple       rootValue;
    std::vector<RootMoveStat> rootMoves;
};

/// Progress report emitted between iterations (alpha-beta) or periodically
/// (MCTS).
struct SearchInfo
{
    int              depth = 0;
    int              score = 0;
    double           utility = 0;
    std::uint64_t    nodes = 0;
    double           elapsedMs = 0;
    std::vector<Pos> pv;
};

using InfoCallback = std::function<void(const SearchInfo &)>;

/// Stop request shared with another thread.
using StopFlag = std::atomic<bool>;

class Stopwatch
{
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}

    double elapsedMs() const
    {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace gomoku
