#include "gomoku/alphabeta.h"

#include "gomoku/threat.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gomoku::ab {

namespace {

constexpr int MaxVcfPlies = 60;

int scoreToTT(int s, int ply)
{
    return s >= MateInMax ? s + ply : s <= -MateInMax ? s - ply : s;
}

int scoreFromTT(int s, int ply)
{
    return s >= MateInMax ? s - ply : s <= -MateInMax ? s + ply : s;
}

int vcfAttack(Board &b, int plies, std::uint64_t cap, std::uint64_t &nodes, bool &exhausted)
{
    if (exhausted || ++nodes > cap) {
        exhausted = true;
        return 0;
    }
    const Color us = b.sideToMove(), them = opponent(us);
    threat::Threats own = threat::scan(b, us);
    if (!own.fivePoints.empty())
        return 1;
    if (plies + 3 > MaxVcfPlies)
        return 0;

    std::vector<Pos> theirFives = threat::fivePoints(b, them);
    if (theirFives.size() >= 2)
        return 0;
    std::vector<Pos> moves;
    if (theirFives.size() == 1) {
        if (std::binary_search(own.fourMoves.begin(), own.fourMoves.end(), theirFives[0],
                               [&](Pos a, Pos c) { return b.index(a) < b.index(c); }))
            moves.push_back(theirFives[0]);
    }
    else
        moves = std::move(own.fourMoves);

    for (Pos m : moves) {
        b.makeMove(m);
        std::vector<Pos> fives = threat::fivePoints(b, us);
        int              found = 0;
        if (threat::fivePoints(b, them).empty()) {
            if (fives.size() >= 2)
                found = 3;
            else if (fives.size() == 1) {
                b.makeMove(fives[0]);
                if (b.outcome() == GameOutcome::Ongoing) {
                    int r = vcfAttack(b, plies + 2, cap, nodes, exhausted);
                    if (r > 0)
                        found = r + 2;
                }
                b.undoMove();
            }
        }
        b.undoMove();
        if (found > 0)
            return found;
        if (exhausted)
            return 0;
    }
    return 0;
}

}  // namespace

int toScore(double utility)
{
    return static_cast<int>(std::lround(std::clamp(utility, -1.0, 1.0) * 1000));
}

int vcf(Board &b, std::uint64_t cap, std::uint64_t &nodes)
{
    if (b.outcome() != GameOutcome::Ongoing)
        return 0;
    bool exhausted = false;
    int  r         = vcfAttack(b, 0, cap, nodes, exhausted);
    return exhausted ? 0 : r;
}

std::vector<Pos> orderMoves(const Board &b,
                            std::vector<Pos> moves,
                            const std::vector<float> &policy,
                            Pos ttMove,
                            int maxBranch,
                            const std::vector<Pos> &keep)
{
    std::stable_sort(moves.begin(), moves.end(), [&](Pos x, Pos y) {
        float px = policy[b.index(x)], py = policy[b.index(y)];
        return px != py ? px > py : b.index(x) < b.index(y);
    });
    if (maxBranch > 0 && int(moves.size()) > maxBranch) {
        auto tail = std::stable_partition(moves.begin() + maxBranch, moves.end(), [&](Pos m) {
            return std::find(keep.begin(), keep.end(), m) != keep.end();
        });
        moves.erase(tail, moves.end());
    }
    auto it = std::find(moves.begin(), moves.end(), ttMove);
    if (ttMove.valid() && it != moves.end())
        std::rotate(moves.begin(), it, it + 1);
    return moves;
}

std::vector<Pos> nodeMoves(const Board &b)
{
    std::vector<Pos> theirFives = threat::fivePoints(b, opponent(b.sideToMove()));
    if (theirFives.size() == 1)
        return theirFives;
    return b.candidateMoves();
}

Searcher::Searcher(mixnet::Evaluator &eval, TranspositionTable &tt, Params params)
    : eval_(eval)
    , tt_(tt)
    , params_(params)
{}

bool Searcher::pollStop()
{
    if ((nodes_ & 1023) == 0) {
        if (stop_ && stop_->load(std::memory_order_relaxed))
            stopped_ = true;
        if (params_.timeMs > 0 && clock_.elapsedMs() >= params_.timeMs)
            stopped_ = true;
    }
    return stopped_;
}

int Searcher::staticEval(Board &b)
{
    return toScore(eval_.evaluateValue(b, params_.precision).utility());
}

int Searcher::leaf(Board &b, int ply)
{
    int len = vcf(b, params_.vcfNodeCap, vcfNodes_);
    if (len > 0)
        return Mate - (ply + len);
    return staticEval(b);
}

int Searcher::pvs(Board &b, int depth, int alpha, int beta, int ply, bool pvNode, Pos excluded)
{
    nodes_++;
    pvLen_[ply] = ply;
    if (pollStop())
        return 0;

    if (b.outcome() != GameOutcome::Ongoing)
        return b.outcome() == GameOutcome::Draw ? 0 : -(Mate - ply);
    if (b.full())
        return 0;

    const Color us = b.sideToMove(), them = opponent(us);
    threat::Threats  ours       = threat::scan(b, us);
    std::vector<Pos> &ourFives  = ours.fivePoints;
    std::vector<Pos> theirFives = threat::fivePoints(b, them);
    if (!ourFives.empty()) {
        if (ply == 0) {
            pv_[0][0]  = ourFives[0];
            pvLen_[0]  = 1;
        }
        return Mate - (ply + 1);
    }
    if (theirFives.size() >= 2) {
        if (ply == 0) {
            pv_[0][0] = theirFives[0];
            pvLen_[0] = 1;
        }
        return -(Mate - (ply + 2));
    }
    if (depth <= 0 || ply >= MaxPly)
        return leaf(b, ply);

    const int origAlpha = alpha;
    const bool useTT    = params_.useTT && !excluded.valid();
    TTEntry    entry;
    bool       hit     = useTT && tt_.probe(b.hash(), entry);
    int        ttScore = hit ? scoreFromTT(entry.score, ply) : 0;
    Pos        ttMove  = hit && entry.move != TTEntry::NoMove ? b.pos(entry.move) : NullPos;

    // Cut only on entries of exactly this depth so the result stays a pure
    // function of (position, depth).
    if (hit && ply > 0 && entry.depth == depth) {
        if (entry.bound == Bound::Exact
            || (entry.bound == Bound::Lower && ttScore >= beta)
            || (entry.bound == Bound::Upper && ttScore <= alpha))
            return ttScore;
    }

    mixnet::Evaluation ev   = eval_.evaluate(b, params_.precision);
    const int          eval = toScore(ev.value.utility());

    if (params_.nullMove && !pvNode && ply > 0 && depth >= 3 && !excluded.valid() && eval >= beta
        && theirFives.empty() && !threat::hasOpenThreeOrBetter(b, them)) {
        b.makeNullMove();
        int s = -pvs(b, depth - 1 - params_.nullReduction, -beta, -beta + 1, ply + 1, false, NullPos);
        b.undoNullMove();
        if (stopped_)
            return 0;
        if (s >= beta)
            return s >= MateInMax ? beta : s;
    }

    int singularExt = 0;
    if (params_.singular && ply > 0 && depth >= 4 && hit && ttMove.valid() && !excluded.valid()
        && entry.bound != Bound::Upper && entry.depth >= depth - 3 && std::abs(ttScore) < MateInMax) {
        int sBeta = ttScore - params_.singularMargin;
        int s     = pvs(b, (depth - 1) / 2, sBeta - 1, sBeta, ply, false, ttMove);
        if (stopped_)
            return 0;
        if (s < sBeta)
            singularExt = 1;
        pvLen_[ply] = ply;
    }

    std::vector<Pos> moves = orderMoves(b, nodeMoves(b), ev.policy, ttMove, params_.maxBranch, ours.fourMoves);

    int  best     = -Infinity;
    Pos  bestMove = NullPos;
    int  searched = 0;
    for (size_t i = 0; i < moves.size(); i++) {
        Pos m = moves[i];
        if (m == excluded)
            continue;
        bool quiet = theirFives.empty() && !threat::makesFour(b, m, us);
        if (params_.futility && searched > 0 && !pvNode && depth <= 3 && quiet
            && std::abs(alpha) < MateInMax && eval + params_.futilityMargin[depth] <= alpha)
            continue;

        b.makeMove(m);
        int newDepth = depth - 1 + (m == ttMove ? singularExt : 0);
        int score;
        if (searched == 0)
            score = -pvs(b, newDepth, -beta, -alpha, ply + 1, pvNode, NullPos);
        else {
            int r = 0;
            if (params_.lmr && depth >= 3 && searched >= 3 && quiet) {
                r = int(params_.lmrBase
                        + std::log(double(depth)) * std::log(double(searched)) / params_.lmrDivisor);
                r = std::clamp(r, 0, newDepth - 1);
            }
            score = -pvs(b, newDepth - r, -alpha - 1, -alpha, ply + 1, false, NullPos);
            if (score > alpha && r > 0)
                score = -pvs(b, newDepth, -alpha - 1, -alpha, ply + 1, false, NullPos);
            if (score > alpha && score < beta)
                score = -pvs(b, newDepth, -beta, -alpha, ply + 1, true, NullPos);
        }
        b.undoMove();
        searched++;
        if (stopped_)
            return 0;

        if (score > best) {
            best     = score;
            bestMove = m;
            if (score > alpha) {
                alpha          = score;
                pv_[ply][ply]  = m;
                for (int k = ply + 1; k < pvLen_[ply + 1]; k++)
                    pv_[ply][k] = pv_[ply + 1][k];
                pvLen_[ply] = std::max(pvLen_[ply + 1], ply + 1);
                if (alpha >= beta)
                    break;
            }
        }
    }
    if (searched == 0)
        return excluded.valid() ? -Infinity : leaf(b, ply);

    if (useTT) {
        Bound bound = best <= origAlpha ? Bound::Upper : best >= beta ? Bound::Lower : Bound::Exact;
        tt_.store(b.hash(), depth, bound, scoreToTT(best, ply), bestMove.valid() ? b.index(bestMove) : -1);
    }
    return best;
}

int Searcher::searchDepth(Board &board, int depth, int alpha, int beta)
{
    stopped_ = false;
    return pvs(board, depth, alpha, beta, 0, true, NullPos);
}

SearchResult Searcher::search(Board &board, const StopFlag *stop, const InfoCallback &info)
{
    if (board.outcome() != GameOutcome::Ongoing || board.full())
        throw EngineError(EngineError::Code::NoLegalMove, "game is over");

    stop_     = stop;
    stopped_  = false;
    clock_    = Stopwatch {};
    nodes_    = 0;
    vcfNodes_ = 0;
    tt_.newSearch();

    SearchResult result;
    result.rootValue = eval_.evaluate(board, params_.precision).value;
    result.best      = orderMoves(board, nodeMoves(board),
                                  eval_.evaluate(board, params_.precision).policy, NullPos, 1)
                      .front();
    result.utility   = result.rootValue.utility();
    result.score     = toScore(result.utility);
    result.pv        = {result.best};

    int prev = 0;
    for (int depth = 1; depth <= params_.maxDepth; depth++) {
        int alpha = -Infinity, beta = Infinity, delta = params_.aspirationWindow;
        if (params_.aspiration && depth > 1 && std::abs(prev) < MateInMax) {
            alpha = std::max(prev - delta, -Infinity);
            beta  = std::min(prev + delta, Infinity);
        }
        int score;
        for (;;) {
            score = pvs(board, depth, alpha, beta, 0, true, NullPos);
            if (stopped_)
                break;
            if (score <= alpha && alpha > -Infinity) {
                delta *= 4;
                alpha = score - delta < -MateInMax ? -Infinity : score - delta;
            }
            else if (score >= beta && beta < Infinity) {
                delta *= 4;
                beta = score + delta > MateInMax ? Infinity : score + delta;
            }
            else
                break;
        }
        if (stopped_)
            break;

        prev          = score;
        result.score  = score;
        result.depth  = depth;
        result.pv.assign(pv_[0].begin(), pv_[0].begin() + pvLen_[0]);
        if (!result.pv.empty())
            result.best = result.pv.front();
        result.utility = std::abs(score) >= MateInMax ? (score > 0 ? 1.0 : -1.0) : score / 1000.0;
        if (info)
            info({depth, score, result.utility, nodes_, clock_.elapsedMs(), result.pv});

        if (params_.stopOnMate && std::abs(score) >= MateInMax)
            break;
        if (params_.timeMs > 0 && clock_.elapsedMs() >= params_.timeMs * 0.5)
            break;
    }
    eval_.sync(board);
    result.nodes     = nodes_;
    result.elapsedMs = clock_.elapsedMs();
    stop_            = nullptr;
    return result;
}

}  // namespace gomoku::ab
