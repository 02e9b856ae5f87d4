#pragma once

#include "evaluator.h"
#include "search.h"

#include <cstdint>
#include <vector>

namespace gomoku::mcts {

struct Params
{
    double cpuctInit = 1.0;
    double cpuctLog  = 0.4;
    double cpuctBase = 500.0;
    double fpu       = 0.1;
    double lcbZ      = 1.28;

    std::uint64_t playouts = 1000;  // 0: no playout limit
    double        timeMs   = 0;     // 0: no time limit
    /// Keep only winning moves, or only forced blocks, when expanding.
    bool              rulePruning = true;
    mixnet::Precision precision   = mixnet::Precision::Quantized;
};

/// c_init + c_log * ln(1 + visits / c_base)
double cpuct(double parentVisits, const Params &p);

/// Statistics are kept from the point of view of the side to move at the
/// node; a parent reads a child's Q negated.
struct Node
{
    Pos           move;
    float         prior = 0;
    std::uint32_t n     = 0;
    double        w     = 0;
    double        w2    = 0;
    bool          expanded = false;
    bool          terminal = false;
    double        terminalValue = 0;  // -1: the previous mover won, 0: draw
    std::vector<Node> children;

    double q() const { return n ? w / n : 0.0; }
};

/// PUCT argmax over an expanded node: Q(a) + cpuct(N) * P(a) * sqrt(N) / (1 + N(a)),
/// N the node's own visit count. Unvisited children take the first-play
/// urgency value Q(node) - fpu * sqrt(sum of priors of visited children).
/// Ties go to the lowest index.
int selectChild(const Node &node, const Params &p);

/// Root move choice: an immediately winning child if present, else the best
/// lower confidence bound among children with at least two visits, else the
/// most visited child (ties by prior, then index).
int finalChild(const Node &root, const Params &p);

class Searcher
{
public:
    Searcher(mixnet::Evaluator &eval, Params params);

    /// Throws EngineError(BudgetZero) without any budget and
    /// EngineError(NoLegalMove) if the game is over.
    SearchResult search(Board &board, const StopFlag *stop = nullptr, const InfoCallback &info = {});

    const Node &root() const { return root_; }
    int         maxDepth() const { return maxDepth_; }

private:
    double playout(Node &node, Board &board, int depth);
    void   expand(Node &node, Board &board, const std::vector<float> &policy);
    void   update(Node &node, double v);

    mixnet::Evaluator &eval_;
    Params             params_;
    Node               root_;
    int                maxDepth_ = 0;
};

}  // namespace gomoku::mcts
