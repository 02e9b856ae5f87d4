#include "../nets.h"
#include "doctest.h"
#include "gomoku/match.h"

#include <cmath>
#include <map>

using namespace gomoku;

namespace {

const std::string BookPath = std::string(GOMOKU_SOURCE_DIR) + "/data/openings.txt";

EngineConfig quickConfig()
{
    EngineConfig c;
    c.mcts.playouts = 24;
    c.ttMiB         = 1;
    c.turnMs        = 0;
    return c;
}

class CrashingPlayer : public Player
{
public:
    explicit CrashingPlayer(bool illegal) : illegal_(illegal) {}
    std::string name() const override { return "crash"; }
    void        newGame(int, int) override {}
    Pos         play(const Board &b, double) override
    {
        if (illegal_)
            return b.history().front().pos;
        throw std::runtime_error("boom");
    }

private:
    bool illegal_;
};

}  // namespace

TEST_CASE("elo formula")
{
    CHECK(eloFromScore(0.5) == 0.0);
    CHECK(eloFromScore(0.909) == doctest::Approx(400).epsilon(0.001));
    CHECK(eloFromScore(0.75) == doctest::Approx(-eloFromScore(0.25)));
    CHECK(std::isinf(eloFromScore(1.0)));
    CHECK(std::isinf(eloFromScore(0.0)));
}

TEST_CASE("wilson bounds solve the score-test quadratic")
{
    for (auto [p, n] : {std::pair {0.5, 20}, {0.75, 40}, {0.1, 7}, {0.95, 300}}) {
        double z      = 1.96;
        auto [lo, hi] = wilsonInterval(p, n, z);
        CHECK(lo < p);
        CHECK(hi > p);
        for (double b : {lo, hi})
            CHECK((p - b) * (p - b) == doctest::Approx(z * z * b * (1 - b) / n).epsilon(1e-9));
    }
    auto [lo, hi] = wilsonInterval(0.5, 20);
    CHECK(lo + hi == doctest::Approx(1.0));
}

TEST_CASE("shipped opening book")
{
    auto book = OpeningBook::load(BookPath);
    CHECK(book.size() == 24);
    for (std::size_t i = 0; i < book.size(); i++) {
        Board b = book.board(i);
        CHECK(b.outcome() == GameOutcome::Ongoing);
        CHECK(book.openings[i].balanced);
    }
    CHECK_THROWS_AS(OpeningBook::parse("balanced 7,7 7,7"), EngineError);
    CHECK_THROWS_AS(OpeningBook::parse("maybe 7,7"), EngineError);
    CHECK_THROWS_AS(OpeningBook::parse("balanced 7;7"), EngineError);
    CHECK_THROWS_AS(OpeningBook::parse("balanced 15,0"), EngineError);
    CHECK(OpeningBook::parse("# only a comment\n\nunbalanced 0,0 # tail\n").openings.at(0).balanced == false);
}

TEST_CASE("self play: paired colors and a confidence interval around zero")
{
    auto   book = OpeningBook::load(BookPath);
    Engine a(quickConfig(), testutil::tinyNet());
    Engine b(quickConfig(), testutil::tinyNet());
    EnginePlayer pa("A", a), pb("B", b);
    MatchOptions opt;
    opt.games = 20;
    auto r    = playMatch(pa, pb, book, opt);

    CHECK(r.games == 20);
    CHECK(r.winsA + r.lossesA + r.draws == 20);
    CHECK(r.eloLow <= 0);
    CHECK(r.eloHigh >= 0);
    MESSAGE("self play score " << r.score << " elo " << r.elo << " [" << r.eloLow << ", " << r.eloHigh << "]");

    std::map<std::size_t, std::pair<int, int>> colors;
    for (auto &g : r.records) {
        (g.aIsBlack ? colors[g.opening].first : colors[g.opening].second)++;
        auto open = book.openings[g.opening].moves;
        REQUIRE(g.moves.size() >= open.size());
        CHECK(std::equal(open.begin(), open.end(), g.moves.begin()));
    }
    CHECK(colors.size() == 10);
    for (auto &[o, c] : colors)
        CHECK(c == std::pair {1, 1});

    std::string rec = formatRecord(r.records[0], 1, "A", "B");
    CHECK(rec.find("[Black \"A\"]") != std::string::npos);
    CHECK(rec.find("1. 7,7") != std::string::npos);
}

TEST_CASE("a crash loses the game")
{
    auto   book = OpeningBook::parse("balanced 7,7 6,7 5,5\n");
    Engine e(quickConfig(), testutil::tinyNet());
    EnginePlayer good("A", e);
    for (bool illegal : {false, true}) {
        CrashingPlayer bad(illegal);
        MatchOptions   opt;
        opt.games = 2;
        auto r    = playMatch(good, bad, book, opt);
        CHECK(r.winsA == 2);
        CHECK(r.records[0].crash == "crash");
        CHECK(r.records[1].crash == "crash");
    }
    MatchOptions odd;
    odd.games = 3;
    CrashingPlayer bad(false);
    CHECK_THROWS_AS(playMatch(good, bad, book, odd), EngineError);
    CHECK_THROWS_AS(playMatch(good, bad, OpeningBook {}, MatchOptions {}), EngineError);
}
