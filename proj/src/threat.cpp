#include "gomoku/threat.h"

#include <algorithm>

namespace gomoku::threat {

namespace {

enum Mark : std::uint8_t { None = 0, Five = 1, Four = 2 };

// Calls fn(cells[len], count) for every in-board window of `len` cells.
template <int Len, typename Fn>
void forEachWindow(const Board &b, Fn &&fn)
{
    const int h = b.height(), w = b.width();
    for (int dir = 0; dir < 4; dir++) {
        Pos d = Directions[dir];
        for (int r = 0; r < h; r++)
            for (int c = 0; c < w; c++) {
                int er = r + (Len - 1) * d.row, ec = c + (Len - 1) * d.col;
                if (er < 0 || er >= h || ec < 0 || ec >= w)
                    continue;
                Pos cells[Len];
                for (int k = 0; k < Len; k++)
                    cells[k] = {r + k * d.row, c + k * d.col};
                fn(cells);
            }
    }
}

std::vector<std::uint8_t> marks(const Board &b, Color c)
{
    std::vector<std::uint8_t> m(b.cellCount(), None);
    forEachWindow<5>(b, [&](const Pos *cells) {
        int own = 0, empty = 0;
        for (int k = 0; k < 5; k++) {
            Cell x = b.at(cells[k]);
            own += x == c;
            empty += x == Cell::Empty;
        }
        if (own + empty != 5)
            return;
        std::uint8_t bit = own == 4 ? Five : own == 3 ? Four : None;
        if (bit)
            for (int k = 0; k < 5; k++)
                if (b.at(cells[k]) == Cell::Empty)
                    m[b.index(cells[k])] |= bit;
    });
    return m;
}

}  // namespace

Threats scan(const Board &b, Color c)
{
    Threats t;
    auto    m = marks(b, c);
    for (int i = 0; i < b.cellCount(); i++) {
        if (m[i] & Five)
            t.fivePoints.push_back(b.pos(i));
        if (m[i] & Four)
            t.fourMoves.push_back(b.pos(i));
    }
    return t;
}

std::vector<Pos> fivePoints(const Board &b, Color c)
{
    return scan(b, c).fivePoints;
}

std::vector<Pos> fourMoves(const Board &b, Color c)
{
    return scan(b, c).fourMoves;
}

bool hasOpenThreeOrBetter(const Board &b, Color c)
{
    bool found = false;
    forEachWindow<5>(b, [&](const Pos *cells) {
        int own = 0, empty = 0;
        for (int k = 0; k < 5; k++) {
            own += b.at(cells[k]) == c;
            empty += b.at(cells[k]) == Cell::Empty;
        }
        found |= own == 4 && empty == 1;
    });
    if (found)
        return true;
    forEachWindow<6>(b, [&](const Pos *cells) {
        if (found || b.at(cells[0]) != Cell::Empty || b.at(cells[5]) != Cell::Empty)
            return;
        int own = 0, empty = 0;
        for (int k = 1; k < 5; k++) {
            own += b.at(cells[k]) == c;
            empty += b.at(cells[k]) == Cell::Empty;
        }
        found = own == 3 && empty == 1;
    });
    return found;
}

bool makesFour(const Board &b, Pos p, Color c)
{
    // Only windows through p can gain a five point.
    for (int dir = 0; dir < 4; dir++) {
        Pos d = Directions[dir];
        for (int s = -4; s <= 0; s++) {
            int own = 0, empty = 0, n = 0;
            for (int k = 0; k < 5; k++) {
                int r = p.row + (s + k) * d.row, col = p.col + (s + k) * d.col;
                if (!b.inBounds(r, col))
                    break;
                n++;
                Cell x = b.at(r, col);
                own += x == c;
                empty += x == Cell::Empty;
            }
            // p itself is empty now and becomes own.
            if (n == 5 && own == 3 && empty == 2)
                return true;
        }
    }
    return false;
}

}  // namespace gomoku::threat
