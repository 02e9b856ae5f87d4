#pragma once

#include "gomoku/board.h"

#include <random>
#include <vector>

namespace testutil {

using namespace gomoku;

/// Plays up to `moves` uniformly random legal moves, stopping at game end.
inline Board randomGame(std::mt19937_64 &rng, int h, int w, int moves, bool nearOnly = false)
{
    Board b(h, w);
    for (int i = 0; i < moves && b.outcome() == GameOutcome::Ongoing && !b.full(); i++) {
        auto cand = nearOnly ? b.candidateMoves() : b.legalMoves();
        std::uniform_int_distribution<size_t> pick(0, cand.size() - 1);
        b.place(cand[pick(rng)]);
    }
    return b;
}

/// Random position that is still ongoing (retries until one is found).
inline Board randomOngoing(std::mt19937_64 &rng, int h, int w, int moves, bool nearOnly = true)
{
    for (;;) {
        Board b = randomGame(rng, h, w, moves, nearOnly);
        if (b.outcome() == GameOutcome::Ongoing && !b.full())
            return b;
    }
}

/// Brute-force five-in-a-row scan over the whole board.
inline bool hasFive(const Board &b, Color c)
{
    for (int r = 0; r < b.height(); r++)
        for (int col = 0; col < b.width(); col++)
            for (auto d : Directions) {
                int k = 0;
                while (k < 5 && b.inBounds(r + k * d.row, col + k * d.col)
                       && b.at(r + k * d.row, col + k * d.col) == c)
                    k++;
                if (k == 5)
                    return true;
            }
    return false;
}

}  // namespace testutil
