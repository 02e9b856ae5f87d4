#include "gomoku/pattern.h"

#include <algorithm>
#include <cassert>

namespace gomoku::pattern {

namespace {

int stepsOnBoard(int height, int width, Pos p, Pos step)
{
    int n = 0;
    int r = p.row + step.row, c = p.col + step.col;
    while (n < HalfLength && r >= 0 && r < height && c >= 0 && c < width) {
        n++;
        r += step.row;
        c += step.col;
    }
    return n;
}

}  // namespace

int leftExtent(int height, int width, Pos p, int dir)
{
    Pos d = Directions[dir];
    return stepsOnBoard(height, width, p, {-d.row, -d.col});
}

int rightExtent(int height, int width, Pos p, int dir)
{
    return stepsOnBoard(height, width, p, Directions[dir]);
}

LinePattern extract(const Board &board, Pos p, int dir, Color perspective)
{
    LinePattern lp;
    lp.left  = leftExtent(board.height(), board.width(), p, dir);
    lp.right = rightExtent(board.height(), board.width(), p, dir);
    Pos d    = Directions[dir];
    for (int k = -lp.left; k <= lp.right; k++)
        lp.cells[lp.left + k] =
            digitFor(board.at(p.row + k * d.row, p.col + k * d.col), perspective);
    return lp;
}

std::uint32_t index(const LinePattern &p)
{
    assert(p.left >= 0 && p.left <= HalfLength && p.right >= 0 && p.right <= HalfLength);
    std::uint32_t code = 0;
    for (int k = p.length() - 1; k >= 0; k--)
        code = code * 3 + p.cells[k];
    return Base[p.left][p.right] + code;
}

LinePattern decode(std::uint32_t id)
{
    assert(id < PatternCount);
    // Base is increasing in lexicographic (left, right) order.
    int block = 0;
    for (int b = 0; b < (HalfLength + 1) * (HalfLength + 1); b++)
        if (Base[b / (HalfLength + 1)][b % (HalfLength + 1)] <= id)
            block = b;

    LinePattern lp;
    lp.left            = block / (HalfLength + 1);
    lp.right           = block % (HalfLength + 1);
    std::uint32_t code = id - Base[lp.left][lp.right];
    for (int k = 0; k < lp.length(); k++) {
        lp.cells[k] = code % 3;
        code /= 3;
    }
    return lp;
}

AffectedCells affectedCells(int height, int width, Pos p)
{
    AffectedCells out;
    for (int dir = 0; dir < 4; dir++) {
        Pos d = Directions[dir];
        for (int k = -HalfLength; k <= HalfLength; k++) {
            int r = p.row + k * d.row, c = p.col + k * d.col;
            if (r >= 0 && r < height && c >= 0 && c < width)
                out.items[out.count++] = {{r, c}, dir};
        }
    }
    return out;
}

}  // namespace gomoku::pattern
