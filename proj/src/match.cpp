#include "gomoku/match.h"

#include <cmath>
#include <limits>
#include <sstream>

namespace gomoku {

Pos EnginePlayer::play(const Board &board, double timeMs)
{
    Board b = board;
    return engine_.think(b, timeMs).best;
}

double GameRecord::scoreA() const
{
    if (outcome == GameOutcome::Draw || outcome == GameOutcome::Ongoing)
        return 0.5;
    bool blackWon = outcome == GameOutcome::BlackWin;
    return blackWon == aIsBlack ? 1.0 : 0.0;
}

double eloFromScore(double score)
{
    if (score <= 0)
        return -std::numeric_limits<double>::infinity();
    if (score >= 1)
        return std::numeric_limits<double>::infinity();
    return -400.0 * std::log10(1.0 / score - 1.0) + 0.0;
}

std::pair<double, double> wilsonInterval(double p, int n, double z)
{
    if (n <= 0)
        return {0.0, 1.0};
    double z2     = z * z;
    double denom  = 1 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half   = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

GameRecord playGame(Player &a, Player &b, const OpeningBook &book, std::size_t opening, bool aIsBlack,
                    const MatchOptions &opt)
{
    GameRecord g;
    g.opening  = opening;
    g.aIsBlack = aIsBlack;

    Board board = book.board(opening, opt.boardSize);
    for (const Move &m : board.history())
        g.moves.push_back(m.pos);
    a.newGame(opt.boardSize, opt.boardSize);
    b.newGame(opt.boardSize, opt.boardSize);

    int maxPlies = opt.maxPlies > 0 ? opt.maxPlies : board.cellCount();
    while (board.outcome() == GameOutcome::Ongoing && board.stoneCount() < maxPlies) {
        bool    blackToMove = board.sideToMove() == Color::Black;
        Player &mover       = blackToMove == aIsBlack ? a : b;
        Pos     p;
        bool    ok = true;
        try {
            p  = mover.play(board, opt.turnMs);
            ok = board.place(p) == MoveStatus::Ok;
        }
        catch (const std::exception &) {
            ok = false;
        }
        if (!ok) {
            g.crash   = mover.name();
            g.outcome = winFor(opponent(board.sideToMove()));
            return g;
        }
        g.moves.push_back(p);
    }
    g.outcome = board.outcome() == GameOutcome::Ongoing ? GameOutcome::Draw : board.outcome();
    return g;
}

}  // namespace

MatchReport playMatch(Player &a, Player &b, const OpeningBook &book, const MatchOptions &opt)
{
    if (opt.games <= 0 || opt.games % 2)
        throw EngineError(EngineError::Code::InvalidArgument, "game count must be positive and even");
    if (book.openings.empty())
        throw EngineError(EngineError::Code::InvalidArgument, "empty opening book");

    MatchReport r;
    for (int i = 0; i < opt.games; i++) {
        GameRecord g = playGame(a, b, book, (i / 2) % book.size(), i % 2 == 0, opt);
        double     s = g.scoreA();
        r.winsA += s == 1.0;
        r.lossesA += s == 0.0;
        r.draws += s == 0.5;
        r.score += s;
        r.records.push_back(std::move(g));
    }
    r.games = opt.games;
    r.score /= r.games;
    r.elo       = eloFromScore(r.score);
    auto [lo, hi] = wilsonInterval(r.score, r.games);
    r.eloLow    = eloFromScore(lo);
    r.eloHigh   = eloFromScore(hi);
    return r;
}

std::string formatRecord(const GameRecord &g, int index, const std::string &nameA, const std::string &nameB)
{
    const char *result = g.outcome == GameOutcome::BlackWin   ? "1-0"
                         : g.outcome == GameOutcome::WhiteWin ? "0-1"
                                                              : "1/2-1/2";
    std::ostringstream ss;
    ss << "[Game \"" << index << "\"]\n"
       << "[Opening \"" << g.opening << "\"]\n"
       << "[Black \"" << (g.aIsBlack ? nameA : nameB) << "\"]\n"
       << "[White \"" << (g.aIsBlack ? nameB : nameA) << "\"]\n"
       << "[Result \"" << result << "\"]\n";
    if (!g.crash.empty())
        ss << "[Termination \"crash " << g.crash << "\"]\n";
    for (size_t i = 0; i < g.moves.size(); i++) {
        if (i % 2 == 0)
            ss << (i ? " " : "") << i / 2 + 1 << ".";
        ss << ' ' << g.moves[i].row << ',' << g.moves[i].col;
    }
    ss << ' ' << result << "\n";
    return ss.str();
}

}  // namespace gomoku
