#include "../support.h"
#include "doctest.h"

#include <algorithm>
#include <set>

using namespace gomoku;
using testutil::hasFive;

TEST_CASE("place and undo restore cells, side and hash")
{
    std::mt19937_64 rng(1);
    for (int g = 0; g < 50; g++) {
        Board b = testutil::randomGame(rng, 15, 15, 80);
        Board replay(15, 15);
        for (const Move &m : b.history())
            REQUIRE(replay.place(m.pos) == MoveStatus::Ok);
        CHECK(replay == b);
        CHECK(replay.hash() == b.computeHash());

        while (b.stoneCount() > 0) {
            REQUIRE(b.undo() == MoveStatus::Ok);
            CHECK(b.hash() == b.computeHash());
        }
        CHECK(b == Board(15, 15));
        CHECK(b.hash() == 0);
        CHECK(b.undo() == MoveStatus::EmptyHistory);
    }
}

TEST_CASE("checked placement rejects without side effects")
{
    Board b(15, 15);
    REQUIRE(b.place({7, 7}) == MoveStatus::Ok);
    Board before = b;
    CHECK(b.place({7, 7}) == MoveStatus::OccupiedCell);
    CHECK(b.place({15, 0}) == MoveStatus::OutOfBounds);
    CHECK(b.place({-1, 3}) == MoveStatus::OutOfBounds);
    CHECK(b == before);
    CHECK(b.hash() == before.hash());
}

TEST_CASE("win detection agrees with a whole-board scan")
{
    std::mt19937_64 rng(2);
    int             wins = 0;
    for (int g = 0; g < 300; g++) {
        Board b(9, 9);
        while (b.outcome() == GameOutcome::Ongoing && !b.full()) {
            auto moves = b.legalMoves();
            Pos  p     = moves[std::uniform_int_distribution<size_t>(0, moves.size() - 1)(rng)];
            Color c    = b.sideToMove();
            CHECK(b.makesFive(p, c) == [&] {
                Board t = b;
                t.place(p);
                return hasFive(t, c);
            }());
            b.place(p);
            bool black = hasFive(b, Color::Black), white = hasFive(b, Color::White);
            GameOutcome expect = black ? GameOutcome::BlackWin
                               : white ? GameOutcome::WhiteWin
                               : b.full() ? GameOutcome::Draw
                                          : GameOutcome::Ongoing;
            REQUIRE(b.outcome() == expect);
        }
        wins += b.outcome() != GameOutcome::Draw;
        CHECK(b.legalMoves().empty());
        for (int i = 0; i < b.cellCount(); i++)
            if (b.at(b.pos(i)) == Cell::Empty) {
                CHECK(b.place(b.pos(i)) == MoveStatus::GameOver);
                break;
            }
    }
    CHECK(wins > 100);
}

TEST_CASE("overline counts as a win")
{
    Board b = parsePosition("xxxx.xx..\n"
                            "ooo......\n"
                            "o........\n"
                            "o........\n"
                            "........o\n"
                            "side x\n");
    b.makeMove({0, 4});
    CHECK(b.outcome() == GameOutcome::BlackWin);
}

TEST_CASE("candidate moves are the empty cells within distance two")
{
    std::mt19937_64 rng(3);
    for (int g = 0; g < 100; g++) {
        int   h = 5 + g % 11, w = 5 + (g * 7) % 13;
        Board b = testutil::randomGame(rng, h, w, g % 30);
        std::set<std::pair<int, int>> expect;
        for (int r = 0; r < h; r++)
            for (int c = 0; c < w; c++) {
                if (b.at(r, c) != Cell::Empty)
                    continue;
                bool near = false;
                for (int dr = -2; dr <= 2; dr++)
                    for (int dc = -2; dc <= 2; dc++)
                        near |= b.inBounds(r + dr, c + dc) && b.at(r + dr, c + dc) != Cell::Empty;
                if (near)
                    expect.insert({r, c});
            }
        if (b.stoneCount() == 0)
            expect.insert({h / 2, w / 2});
        if (b.outcome() != GameOutcome::Ongoing)
            expect.clear();
        std::set<std::pair<int, int>> got;
        for (Pos p : b.candidateMoves())
            got.insert({p.row, p.col});
        CHECK(got == expect);
    }
}

TEST_CASE("position text round trip")
{
    std::mt19937_64 rng(4);
    for (int g = 0; g < 30; g++) {
        Board b = testutil::randomGame(rng, 10, 12, 25);
        Board p = parsePosition(formatPosition(b));
        CHECK(formatPosition(p) == formatPosition(b));
        CHECK(p.hash() == b.hash());
        CHECK(p.sideToMove() == b.sideToMove());
    }
    CHECK_THROWS_AS(parsePosition("x.z\n"), EngineError);
}

TEST_CASE("color swap exchanges stones and side")
{
    std::mt19937_64 rng(5);
    Board           b = testutil::randomGame(rng, 15, 15, 21);
    Board           s = b.colorSwapped();
    CHECK(s.sideToMove() == opponent(b.sideToMove()));
    for (int r = 0; r < 15; r++)
        for (int c = 0; c < 15; c++) {
            Cell x = b.at(r, c);
            CHECK(s.at(r, c) == (x == Cell::Empty ? x : opponent(x)));
        }
}

TEST_CASE("zobrist keys are distinct")
{
    std::set<HashKey> keys {zobrist::sideKey()};
    for (Color c : {Color::Black, Color::White})
        for (int r = 0; r < MaxBoardSize; r++)
            for (int col = 0; col < MaxBoardSize; col++)
                keys.insert(zobrist::stoneKey(c, r, col));
    CHECK(keys.size() == 2 * MaxBoardSize * MaxBoardSize + 1);
}

TEST_CASE("null move flips side and hash")
{
    Board b(15, 15);
    b.place({7, 7});
    HashKey h = b.hash();
    b.makeNullMove();
    CHECK(b.sideToMove() == Color::Black);
    CHECK(b.hash() != h);
    b.undoNullMove();
    CHECK(b.hash() == h);
    CHECK(b.sideToMove() == Color::White);
}
