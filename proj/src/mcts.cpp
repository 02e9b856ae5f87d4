#include "gomoku/mcts.h"

#include "gomoku/threat.h"

#include <algorithm>
#include <cmath>

namespace gomoku::mcts {

double cpuct(double parentVisits, const Params &p)
{
    return p.cpuctInit + p.cpuctLog * std::log(1.0 + parentVisits / p.cpuctBase);
}

int selectChild(const Node &node, const Params &p)
{
    const double sqrtN = std::sqrt(double(node.n));
    const double c     = cpuct(node.n, p);

    double exploredPrior = 0;
    for (const Node &ch : node.children)
        if (ch.n > 0)
            exploredPrior += ch.prior;
    const double fpuValue = node.q() - p.fpu * std::sqrt(exploredPrior);

    int    best      = -1;
    double bestScore = -INFINITY;
    for (int i = 0; i < int(node.children.size()); i++) {
        const Node &ch    = node.children[i];
        double      q     = ch.n > 0 ? -ch.q() : fpuValue;
        double      score = q + c * ch.prior * sqrtN / (1.0 + ch.n);
        if (score > bestScore) {
            bestScore = score;
            best      = i;
        }
    }
    return best;
}

int finalChild(const Node &root, const Params &p)
{
    const auto &ch = root.children;
    for (int i = 0; i < int(ch.size()); i++)
        if (ch[i].terminal && ch[i].terminalValue < 0)
            return i;

    int    best    = -1;
    double bestLcb = -INFINITY;
    for (int i = 0; i < int(ch.size()); i++) {
        if (ch[i].n < 2 || (ch[i].terminal && ch[i].terminalValue < 0))
            continue;
        double n    = ch[i].n;
        double mean = -ch[i].w / n;
        double var  = std::max(0.0, (ch[i].w2 - ch[i].w * ch[i].w / n) / (n - 1));
        double lcb  = mean - p.lcbZ * std::sqrt(var / n);
        if (lcb > bestLcb || (lcb == bestLcb && ch[i].n > ch[best].n)) {
            bestLcb = lcb;
            best    = i;
        }
    }
    if (best >= 0)
        return best;

    for (int i = 0; i < int(ch.size()); i++)
        if (best < 0 || ch[i].n > ch[best].n
            || (ch[i].n == ch[best].n && ch[i].prior > ch[best].prior))
            best = i;
    return best;
}

Searcher::Searcher(mixnet::Evaluator &eval, Params params) : eval_(eval), params_(params) {}

void Searcher::update(Node &node, double v)
{
    node.n++;
    node.w += v;
    node.w2 += v * v;
}

void Searcher::expand(Node &node, Board &board, const std::vector<float> &policy)
{
    std::vector<Pos> moves;
    if (params_.rulePruning) {
        moves = threat::fivePoints(board, board.sideToMove());
        if (moves.empty())
            moves = threat::fivePoints(board, opponent(board.sideToMove()));
    }
    if (moves.empty())
        moves = board.candidateMoves();

    double sum = 0;
    for (Pos m : moves)
        sum += policy[board.index(m)];
    node.children.resize(moves.size());
    for (size_t i = 0; i < moves.size(); i++) {
        node.children[i].move  = moves[i];
        node.children[i].prior = sum > 0 ? float(policy[board.index(moves[i])] / sum)
                                         : 1.0f / moves.size();
    }
    node.expanded = true;
}

double Searcher::playout(Node &node, Board &board, int depth)
{
    maxDepth_ = std::max(maxDepth_, depth);
    if (node.n == 0 && board.outcome() != GameOutcome::Ongoing) {
        node.terminal      = true;
        node.terminalValue = board.outcome() == GameOutcome::Draw ? 0.0 : -1.0;
    }
    double v;
    if (node.terminal)
        v = node.terminalValue;
    else if (node.n == 0)
        v = eval_.evaluateValue(board, params_.precision).utility();
    else {
        if (!node.expanded)
            expand(node, board, eval_.evaluate(board, params_.precision).policy);
        Node &child = node.children[selectChild(node, params_)];
        board.makeMove(child.move);
        v = -playout(child, board, depth + 1);
        board.undoMove();
    }
    update(node, v);
    return v;
}

SearchResult Searcher::search(Board &board, const StopFlag *stop, const InfoCallback &info)
{
    if (params_.playouts == 0 && params_.timeMs <= 0)
        throw EngineError(EngineError::Code::BudgetZero, "search needs a playout or time budget");
    if (board.outcome() != GameOutcome::Ongoing || board.full())
        throw EngineError(EngineError::Code::NoLegalMove, "game is over");

    Stopwatch clock;
    root_     = Node {};
    maxDepth_ = 0;

    mixnet::Evaluation rootEval = eval_.evaluate(board, params_.precision);
    update(root_, rootEval.value.utility());
    expand(root_, board, rootEval.policy);

    std::uint64_t done = 0;
    while (params_.playouts == 0 || done < params_.playouts) {
        if (stop && stop->load(std::memory_order_relaxed))
            break;
        if (params_.timeMs > 0 && done % 64 == 0 && done > 0 && clock.elapsedMs() >= params_.timeMs)
            break;
        Node &child = root_.children[selectChild(root_, params_)];
        board.makeMove(child.move);
        update(root_, -playout(child, board, 1));
        board.undoMove();
        done++;
        if (info && done % 1024 == 0)
            info({maxDepth_, 0, root_.q(), done, clock.elapsedMs(), {}});
    }

    eval_.sync(board);
    SearchResult r;
    r.rootValue = rootEval.value;
    r.nodes     = done;
    r.depth     = maxDepth_;
    r.utility   = root_.q();
    r.best      = root_.children[finalChild(root_, params_)].move;
    for (const Node &ch : root_.children)
        r.rootMoves.push_back({ch.move, ch.prior, ch.n, ch.n ? -ch.q() : 0.0});

    r.pv.push_back(r.best);
    const Node *cur = nullptr;
    for (const Node &ch : root_.children)
        if (ch.move == r.best)
            cur = &ch;
    while (cur && !cur->children.empty()) {
        auto it = std::max_element(cur->children.begin(), cur->children.end(),
                                   [](const Node &a, const Node &b) { return a.n < b.n; });
        if (it->n == 0)
            break;
        r.pv.push_back(it->move);
        cur = &*it;
    }
    r.score     = static_cast<int>(std::lround(r.utility * 1000));
    r.elapsedMs = clock.elapsedMs();
    if (info)
        info({maxDepth_, r.score, r.utility, done, r.elapsedMs, r.pv});
    return r;
}

}  // namespace gomoku::mcts
