#pragma once

#include "types.h"

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gomoku {

using HashKey = std::uint64_t;

namespace zobrist {

/// Seed of the PRNG (std::mt19937_64) that generates every key.
constexpr std::uint64_t Seed = 0xa52ca39782739747ULL;

HashKey stoneKey(Color c, int row, int col);
HashKey sideKey();

}  // namespace zobrist

/// Four line directions as (row step, col step). Directions 0,1 form the
/// horizontal/vertical group, 2,3 the diagonal group.
constexpr std::array<Pos, 4> Directions {{{0, 1}, {1, 0}, {1, 1}, {1, -1}}};

enum class MoveStatus { Ok, OccupiedCell, OutOfBounds, GameOver, EmptyHistory };

std::string toString(MoveStatus s);

struct Move
{
    Pos         pos;
    Color       color;
    GameOutcome outcomeAfter;
};

/// Freestyle gomoku position with move history and incremental Zobrist hash.
class Board
{
public:
    explicit Board(int height = DefaultBoardSize, int width = DefaultBoardSize);

    int height() const { return height_; }
    int width() const { return width_; }
    int cellCount() const { return height_ * width_; }

    bool inBounds(int row, int col) const
    {
        return row >= 0 && row < height_ && col >= 0 && col < width_;
    }
    bool inBounds(Pos p) const { return inBounds(p.row, p.col); }

    int index(Pos p) const { return p.row * width_ + p.col; }
    Pos pos(int idx) const { return {idx / width_, idx % width_}; }

    Cell at(int row, int col) const { return cells_[row * width_ + col]; }
    Cell at(Pos p) const { return at(p.row, p.col); }

    Color   sideToMove() const { return side_; }
    HashKey hash() const { return hash_; }
    int     stoneCount() const { return stones_; }
    bool    full() const { return stones_ == cellCount(); }

    std::span<const Move> history() const { return history_; }
    Pos                   lastMove() const
    {
        return history_.empty() ? NullPos : history_.back().pos;
    }

    GameOutcome outcome() const
    {
        return history_.empty() ? GameOutcome::Ongoing : history_.back().outcomeAfter;
    }

    /// Checked placement: rejects without touching state on any error.
    MoveStatus place(Pos p);
    /// Checked undo of the last placed stone.
    MoveStatus undo();

    /// Unchecked variants for search. The caller guarantees legality.
    void makeMove(Pos p);
    void undoMove();

    /// Pass the turn without placing a stone (null-move pruning only).
    void makeNullMove();
    void undoNullMove() { makeNullMove(); }

    /// Outcome considering only the four lines through `last`.
    GameOutcome checkWin(Pos last) const;

    /// True if placing `c` at empty `p` would make five or more in a row.
    bool makesFive(Pos p, Color c) const;

    std::vector<Pos> legalMoves() const;
    /// Empty cells within Chebyshev distance 2 of any stone; the center
    /// cell on an empty board.
    std::vector<Pos> candidateMoves() const;
    bool             nearStone(Pos p) const { return near_[index(p)] > 0; }

    HashKey computeHash() const;
    Board   colorSwapped() const;

    /// Build a position from stones listed in placement order. Colors must
    /// alternate counts so that |#black - #white| <= 1; stones are replayed
    /// interleaved (black first) to form a valid history.
    static Board fromStones(int height,
                            int width,
                            std::span<const Pos> black,
                            std::span<const Pos> white);

    friend bool operator==(const Board &a, const Board &b);

private:
    void put(Pos p, Color c);
    void remove(Pos p);
    void touchNeighborhood(Pos p, int delta);

    int                 height_;
    int                 width_;
    std::vector<Cell>   cells_;
    std::vector<std::uint8_t> near_;
    std::vector<Move>   history_;
    Color               side_  = Color::Black;
    HashKey             hash_  = 0;
    int                 stones_ = 0;
};

/// Plain-text position: one row per line using '.', 'x' (black), 'o' (white),
/// then a line `side x` or `side o`. Lines starting with '#' are ignored.
Board       parsePosition(std::string_view text);
std::string formatPosition(const Board &b);

}  // namespace gomoku
