#pragma once

#include "board.h"

#include <vector>

namespace gomoku::threat {

/// Five points and four-making moves of one color, from 5-cell window scans.
/// A window holding four own stones and one empty cell marks a five point;
/// three own stones and two empties (no opponent stone) marks both empties
/// as four-making moves. Both lists are sorted by cell index, no duplicates.
struct Threats
{
    std::vector<Pos> fivePoints;
    std::vector<Pos> fourMoves;
};

Threats scan(const Board &b, Color c);

std::vector<Pos> fivePoints(const Board &b, Color c);
std::vector<Pos> fourMoves(const Board &b, Color c);

/// True if `c` has a five point or an open three (a 6-cell window with empty
/// ends whose four inner cells hold three own stones and one empty).
bool hasOpenThreeOrBetter(const Board &b, Color c);

/// True if placing `c` at `p` creates at least one five point.
bool makesFour(const Board &b, Pos p, Color c);

}  // namespace gomoku::threat
