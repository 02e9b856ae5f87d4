#pragma once

#include "engine.h"
#include "opening.h"

#include <functional>
#include <string>
#include <vector>

namespace gomoku {

/// Anything that can pick a move. Exceptions and illegal moves count as a
/// crash, which loses the game.
class Player
{
public:
    virtual ~Player() = default;
    virtual std::string name() const = 0;
    virtual void        newGame(int height, int width) = 0;
    virtual Pos         play(const Board &board, double timeMs) = 0;
};

class EnginePlayer : public Player
{
public:
    EnginePlayer(std::string name, Engine &engine) : name_(std::move(name)), engine_(engine) {}

    std::string name() const override { return name_; }
    void        newGame(int height, int width) override { engine_.newGame(height, width); }
    Pos         play(const Board &board, double timeMs) override;

private:
    std::string name_;
    Engine     &engine_;
};

struct MatchOptions
{
    int    games     = 2;  // even; each opening is played twice with colors swapped
    double turnMs    = 0;  // 0: the players' own budgets
    int    boardSize = DefaultBoardSize;
    int    maxPlies  = 0;  // 0: until the board is full
};

struct GameRecord
{
    std::size_t      opening = 0;
    bool             aIsBlack = true;
    std::vector<Pos> moves;  // including the opening
    GameOutcome      outcome = GameOutcome::Draw;
    std::string      crash;  // name of the crashing player, if any

    /// 1, 0.5 or 0 from A's point of view.
    double scoreA() const;
};

struct MatchReport
{
    int    games = 0, winsA = 0, lossesA = 0, draws = 0;
    double score = 0;  // A's mean score
    double elo = 0, eloLow = 0, eloHigh = 0;
    std::vector<GameRecord> records;
};

/// -400 * log10(1 / score - 1); infinite at 0 and 1.
double eloFromScore(double score);

/// Wilson score interval for a proportion observed over `n` trials.
std::pair<double, double> wilsonInterval(double p, int n, double z = 1.96);

MatchReport playMatch(Player &a, Player &b, const OpeningBook &book, const MatchOptions &opt);

/// PGN-like text for one game: tag lines, then numbered `row,col` moves.
std::string formatRecord(const GameRecord &g, int index, const std::string &nameA, const std::string &nameB);

}  // namespace gomoku
