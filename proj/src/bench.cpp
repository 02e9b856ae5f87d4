#include "gomoku/bench.h"

#include <random>
#include <sstream>

namespace gomoku {

std::vector<Board> benchPositions(int count, int size, std::uint64_t seed)
{
    std::mt19937_64    rng(seed);
    std::vector<Board> out;
    while (int(out.size()) < count) {
        Board b(size, size);
        int   plies = std::uniform_int_distribution<int>(8, 40)(rng);
        for (int i = 0; i < plies && b.outcome() == GameOutcome::Ongoing; i++) {
            auto cand = b.candidateMoves();
            b.place(cand[std::uniform_int_distribution<size_t>(0, cand.size() - 1)(rng)]);
        }
        if (b.outcome() == GameOutcome::Ongoing && !b.full())
            out.push_back(std::move(b));
    }
    return out;
}

BenchReport runBench(std::shared_ptr<const mixnet::Net> net, const BenchOptions &opt)
{
    BenchReport r;
    auto        positions = benchPositions(opt.positions);
    const int   n         = DefaultBoardSize;

    {
        mixnet::Evaluator ev(net, n, n);
        Board             empty(n, n);
        ev.sync(empty);
        ev.accumulator().resetLookups();
        empty.makeMove({n / 2, n / 2});
        ev.sync(empty);
        r.lookupsInteriorMove = ev.accumulator().lookups();
        ev.accumulator().resetLookups();
        ev.accumulator().refresh(empty);
        r.lookupsRebuild = ev.accumulator().lookups();
    }

    {
        mixnet::Evaluator ev(net, n, n);
        Stopwatch         sw;
        for (int rep = 0; rep < 5; rep++)
            for (auto &b : positions) {
                ev.refresh(b);
                ev.evaluate(b);
                r.fullEvals++;
            }
        r.fullEvalsPerSec = r.fullEvals / std::max(1e-9, sw.elapsedMs() / 1000);
    }

    {
        mixnet::Evaluator ev(net, n, n);
        double            ms = 0;
        for (auto &b : positions) {
            ev.sync(b);
            auto      moves = b.candidateMoves();
            Stopwatch sw;
            for (int i = 0; i < opt.childMoves && i < int(moves.size()); i++) {
                b.makeMove(moves[i]);
                ev.evaluate(b);
                b.undoMove();
                r.incrementalEvals++;
            }
            ms += sw.elapsedMs();
        }
        r.incrementalEvalsPerSec = r.incrementalEvals / std::max(1e-9, ms / 1000);
    }

    {
        mixnet::Evaluator  ev(net, n, n);
        TranspositionTable tt(16);
        ab::Params         p;
        p.maxDepth  = opt.abDepth;
        p.maxBranch = opt.abBranch;
        Stopwatch sw;
        for (auto &b : positions) {
            tt.clear();
            ab::Searcher s(ev, tt, p);
            Board        work = b;
            r.abNodes += s.search(work).nodes;
        }
        r.abNodesPerSec = r.abNodes / std::max(1e-9, sw.elapsedMs() / 1000);
    }

    {
        mixnet::Evaluator ev(net, n, n);
        mcts::Params      p;
        p.playouts = opt.playouts;
        Stopwatch sw;
        for (auto &b : positions) {
            mcts::Searcher s(ev, p);
            Board          work = b;
            r.mctsPlayouts += s.search(work).nodes;
        }
        r.mctsPlayoutsPerSec = r.mctsPlayouts / std::max(1e-9, sw.elapsedMs() / 1000);
    }
    return r;
}

std::string formatBench(const BenchReport &r)
{
    std::ostringstream ss;
    ss << "lookups per interior move   " << r.lookupsInteriorMove << "\n"
       << "lookups per full rebuild    " << r.lookupsRebuild << "\n"
       << "rebuild / incremental       " << r.lookupRatio() << "x\n"
       << "full evals/s                " << static_cast<std::uint64_t>(r.fullEvalsPerSec) << " ("
       << r.fullEvals << " evals)\n"
       << "incremental evals/s         " << static_cast<std::uint64_t>(r.incrementalEvalsPerSec)
       << " (" << r.incrementalEvals << " evals)\n"
       << "alpha-beta nodes            " << r.abNodes << "\n"
       << "alpha-beta nodes/s          " << static_cast<std::uint64_t>(r.abNodesPerSec) << "\n"
       << "mcts playouts               " << r.mctsPlayouts << "\n"
       << "mcts playouts/s             " << static_cast<std::uint64_t>(r.mctsPlayoutsPerSec) << "\n";
    return ss.str();
}

}  // namespace gomoku
