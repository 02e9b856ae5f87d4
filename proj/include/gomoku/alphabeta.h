#pragma once

#include "evaluator.h"
#include "search.h"
#include "tt.h"

#include <array>
#include <cstdint>
#include <vector>

namespace gomoku::ab {

constexpr int Mate       = 30000;
constexpr int Infinity   = 32000;
constexpr int MateInMax  = Mate - 1000;
constexpr int MaxPly     = 128;

struct Params
{
    int    maxDepth = 8;
    bool   useTT    = true;
    bool   futility = true;
    bool   lmr      = true;
    bool   nullMove = true;
    bool   singular = true;
    bool   aspiration = true;
    bool   stopOnMate = true;

    std::array<int, 4> futilityMargin {0, 120, 240, 400};  // by depth 0..3
    double lmrBase        = 0.75;
    double lmrDivisor     = 2.25;
    int    nullReduction  = 2;
    int    singularMargin = 60;
    int    aspirationWindow = 60;
    std::uint64_t vcfNodeCap = 100000;
    /// Search only the top-K moves by policy (0: all candidates).
    int    maxBranch = 0;
    double timeMs    = 0;  // 0: no limit
    mixnet::Precision precision = mixnet::Precision::Quantized;

    /// Every heuristic off: plain PVS with TT and aspiration.
    static Params exact(int depth)
    {
        Params p;
        p.maxDepth = depth;
        p.futility = p.lmr = p.nullMove = p.singular = false;
        p.stopOnMate = false;
        return p;
    }
};

/// Utility in [-1, 1] to centi-value.
int toScore(double utility);

/// Forced win by continuous fours for the side to move. Returns the number
/// of plies to the completed five, or 0 if none is proven within `cap` nodes.
/// Deterministic and independent of any search window.
int vcf(Board &b, std::uint64_t cap, std::uint64_t &nodes);

/// tt move first (if listed), then descending policy, ties by cell index.
/// With maxBranch > 0 the list is cut to the top-K by policy, keeping any
/// move listed in `keep`, before the tt move is promoted.
std::vector<Pos> orderMoves(const Board &b,
                            std::vector<Pos> moves,
                            const std::vector<float> &policy,
                            Pos ttMove,
                            int maxBranch = 0,
                            const std::vector<Pos> &keep = {});

/// Moves searched at an interior node: the single forced block if the
/// opponent has exactly one five point, otherwise every candidate.
std::vector<Pos> nodeMoves(const Board &b);

class Searcher
{
public:
    Searcher(mixnet::Evaluator &eval, TranspositionTable &tt, Params params);

    /// Throws EngineError(NoLegalMove) if the game is over.
    SearchResult search(Board &board, const StopFlag *stop = nullptr, const InfoCallback &info = {});

    /// One fixed-depth principal variation search from the root.
    int searchDepth(Board &board, int depth, int alpha = -Infinity, int beta = Infinity);

    std::uint64_t nodes() const { return nodes_; }
    std::uint64_t vcfNodes() const { return vcfNodes_; }
    const Params &params() const { return params_; }

private:
    int pvs(Board &b, int depth, int alpha, int beta, int ply, bool pvNode, Pos excluded);
    int leaf(Board &b, int ply);
    int staticEval(Board &b);
    bool pollStop();

    mixnet::Evaluator  &eval_;
    TranspositionTable &tt_;
    Params              params_;

    std::uint64_t   nodes_    = 0;
    std::uint64_t   vcfNodes_ = 0;
    const StopFlag *stop_     = nullptr;
    Stopwatch       clock_;
    bool            stopped_  = false;

    std::array<std::array<Pos, MaxPly + 1>, MaxPly + 1> pv_ {};
    std::array<int, MaxPly + 1>                         pvLen_ {};
};

}  // namespace gomoku::ab
