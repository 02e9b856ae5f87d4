#include "../support.h"
#include "doctest.h"
#include "gomoku/pattern.h"

#include <set>
#include <tuple>

using namespace gomoku;
using namespace gomoku::pattern;

namespace {

// Independent walk: collect the window cells by stepping outward from p.
LinePattern walk(const Board &b, Pos p, int dir, Color self)
{
    Pos         d = Directions[dir];
    LinePattern lp;
    while (lp.left < HalfLength && b.inBounds(p.row - (lp.left + 1) * d.row, p.col - (lp.left + 1) * d.col))
        lp.left++;
    while (lp.right < HalfLength && b.inBounds(p.row + (lp.right + 1) * d.row, p.col + (lp.right + 1) * d.col))
        lp.right++;
    for (int k = -lp.left; k <= lp.right; k++) {
        Cell c = b.at(p.row + k * d.row, p.col + k * d.col);
        lp.cells[k + lp.left] = c == Cell::Empty ? 0 : c == self ? 1 : 2;
    }
    return lp;
}

}  // namespace

TEST_CASE("pattern count matches the closed-form sum")
{
    std::uint64_t n = 0;
    for (int i = 0; i <= 5; i++)
        for (int j = 0; j <= 5; j++) {
            std::uint64_t p = 1;
            for (int k = 0; k < i + 1 + j; k++)
                p *= 3;
            n += p;
        }
    CHECK(n == 397488);
    CHECK(PatternCount == n);
}

TEST_CASE("exhaustive enumeration is a bijection onto [0, N)")
{
    std::vector<std::uint8_t> seen(PatternCount, 0);
    std::uint64_t             total = 0;
    for (int l = 0; l <= HalfLength; l++)
        for (int r = 0; r <= HalfLength; r++) {
            int         len = l + 1 + r;
            LinePattern p;
            p.left  = l;
            p.right = r;
            std::uint64_t combos = 1;
            for (int k = 0; k < len; k++)
                combos *= 3;
            for (std::uint64_t v = 0; v < combos; v++) {
                std::uint64_t x = v;
                for (int k = 0; k < len; k++, x /= 3)
                    p.cells[k] = static_cast<std::uint8_t>(x % 3);
                std::uint32_t id = index(p);
                REQUIRE(id < PatternCount);
                seen[id]++;
                total++;
                if (v % 97 == 0)
                    CHECK(decode(id) == p);
            }
        }
    CHECK(total == PatternCount);
    CHECK(std::count(seen.begin(), seen.end(), 1) == PatternCount);
}

TEST_CASE("decode inverts index over the whole range")
{
    for (std::uint32_t id = 0; id < PatternCount; id++) {
        LinePattern p = decode(id);
        if (index(p) != id) {
            FAIL("round trip failed at " << id);
            break;
        }
    }
}

TEST_CASE("extraction matches a direct walk on random boards")
{
    std::mt19937_64 rng(11);
    for (int g = 0; g < 40; g++) {
        int   h = 5 + g % 12, w = 5 + (g * 5) % 14;
        Board b = testutil::randomGame(rng, h, w, h * w / 3);
        for (int r = 0; r < h; r++)
            for (int c = 0; c < w; c++)
                for (int dir = 0; dir < 4; dir++)
                    for (Color self : {Color::Black, Color::White}) {
                        LinePattern got = extract(b, {r, c}, dir, self);
                        REQUIRE(got == walk(b, {r, c}, dir, self));
                        CHECK(got.left == leftExtent(h, w, {r, c}, dir));
                        CHECK(got.right == rightExtent(h, w, {r, c}, dir));
                    }
    }
}

TEST_CASE("perspective swap exchanges digits 1 and 2")
{
    std::mt19937_64 rng(12);
    Board           b = testutil::randomGame(rng, 15, 15, 60);
    for (int i = 0; i < 225; i++)
        for (int dir = 0; dir < 4; dir++) {
            LinePattern x = extract(b, b.pos(i), dir, Color::Black);
            LinePattern y = extract(b, b.pos(i), dir, Color::White);
            for (int k = 0; k < x.length(); k++)
                CHECK(y.cells[k] == (x.cells[k] == 0 ? 0 : 3 - x.cells[k]));
        }
}

TEST_CASE("affected cells are exactly the windows containing the stone")
{
    for (auto [h, w] : {std::pair {15, 15}, {5, 5}, {9, 20}, {32, 32}})
        for (int r = 0; r < h; r++)
            for (int c = 0; c < w; c++) {
                std::set<std::tuple<int, int, int>> expect, got;
                for (int rr = 0; rr < h; rr++)
                    for (int cc = 0; cc < w; cc++)
                        for (int dir = 0; dir < 4; dir++) {
                            Pos d = Directions[dir];
                            for (int k = -HalfLength; k <= HalfLength; k++)
                                if (rr + k * d.row == r && cc + k * d.col == c)
                                    expect.insert({rr, cc, dir});
                        }
                for (CellDir cd : affectedCells(h, w, {r, c}))
                    got.insert({cd.cell.row, cd.cell.col, cd.dir});
                REQUIRE(got == expect);
            }
    CHECK(affectedCells(15, 15, {7, 7}).size() == 44);
    CHECK(affectedCells(15, 15, {0, 0}).size() == 19);
}

TEST_CASE("placing a stone shifts the index by one digit")
{
    std::mt19937_64 rng(13);
    for (int g = 0; g < 200; g++) {
        Board b = testutil::randomOngoing(rng, 15, 15, 20);
        auto  moves = b.legalMoves();
        Pos   p     = moves[rng() % moves.size()];
        Color c     = b.sideToMove();
        for (CellDir cd : affectedCells(15, 15, p)) {
            std::uint32_t before = index(extract(b, cd.cell, cd.dir, Color::Black));
            Board         after  = b;
            after.makeMove(p);
            std::uint32_t now = index(extract(after, cd.cell, cd.dir, Color::Black));
            Pos           d   = Directions[cd.dir];
            int off = d.row != 0 ? (p.row - cd.cell.row) / d.row : (p.col - cd.cell.col) / d.col;
            int left = leftExtent(15, 15, cd.cell, cd.dir);
            CHECK(now - before == digitFor(c, Color::Black) * Pow3[left + off]);
        }
    }
}
