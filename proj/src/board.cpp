#include "gomoku/board.h"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

namespace gomoku {

namespace zobrist {

namespace {

struct Table
{
    HashKey stone[2][MaxBoardSize * MaxBoardSize];
    HashKey side;

    Table()
    {
        std::mt19937_64 prng {Seed};
        for (int i = 0; i < MaxBoardSize * MaxBoardSize; i++) {
            stone[0][i] = prng();
            stone[1][i] = prng();
        }
        side = prng();
    }
};

const Table &table()
{
    static const Table t;
    return t;
}

}  // namespace

HashKey stoneKey(Color c, int row, int col)
{
    return table().stone[colorIndex(c)][row * MaxBoardSize + col];
}

HashKey sideKey()
{
    return table().side;
}

}  // namespace zobrist

std::string toString(GameOutcome o)
{
    switch (o) {
    case GameOutcome::Ongoing: return "ongoing";
    case GameOutcome::BlackWin: return "black";
    case GameOutcome::WhiteWin: return "white";
    case GameOutcome::Draw: return "draw";
    }
    return "?";
}

std::string toString(MoveStatus s)
{
    switch (s) {
    case MoveStatus::Ok: return "ok";
    case MoveStatus::OccupiedCell: return "occupied cell";
    case MoveStatus::OutOfBounds: return "out of bounds";
    case MoveStatus::GameOver: return "game over";
    case MoveStatus::EmptyHistory: return "empty history";
    }
    return "?";
}

Board::Board(int height, int width)
    : height_(height)
    , width_(width)
{
    if (height < MinBoardSize || height > MaxBoardSize || width < MinBoardSize
        || width > MaxBoardSize)
        throw EngineError(EngineError::Code::InvalidArgument,
                          "board size must be in [5, 32]");
    cells_.assign(height * width, Cell::Empty);
    near_.assign(height * width, 0);
    history_.reserve(height * width);
}

void Board::touchNeighborhood(Pos p, int delta)
{
    for (int r = std::max(0, p.row - 2); r <= std::min(height_ - 1, p.row + 2); r++)
        for (int c = std::max(0, p.col - 2); c <= std::min(width_ - 1, p.col + 2); c++)
            near_[r * width_ + c] += delta;
}

void Board::put(Pos p, Color c)
{
    cells_[index(p)] = c;
    hash_ ^= zobrist::stoneKey(c, p.row, p.col);
    stones_++;
    touchNeighborhood(p, 1);
}

void Board::remove(Pos p)
{
    Color c          = cells_[index(p)];
    cells_[index(p)] = Cell::Empty;
    hash_ ^= zobrist::stoneKey(c, p.row, p.col);
    stones_--;
    touchNeighborhood(p, -1);
}

MoveStatus Board::place(Pos p)
{
    if (!inBounds(p))
        return MoveStatus::OutOfBounds;
    if (outcome() != GameOutcome::Ongoing)
        return MoveStatus::GameOver;
    if (at(p) != Cell::Empty)
        return MoveStatus::OccupiedCell;
    makeMove(p);
    return MoveStatus::Ok;
}

MoveStatus Board::undo()
{
    if (history_.empty())
        return MoveStatus::EmptyHistory;
    undoMove();
    return MoveStatus::Ok;
}

void Board::makeMove(Pos p)
{
    assert(inBounds(p) && at(p) == Cell::Empty);
    Color c = side_;
    put(p, c);
    side_ = opponent(c);
    hash_ ^= zobrist::sideKey();

    GameOutcome o = checkWin(p);
    if (o == GameOutcome::Ongoing && full())
        o = GameOutcome::Draw;
    history_.push_back({p, c, o});
}

void Board::undoMove()
{
    assert(!history_.empty());
    Move m = history_.back();
    history_.pop_back();
    remove(m.pos);
    side_ = m.color;
    hash_ ^= zobrist::sideKey();
}

void Board::makeNullMove()
{
    side_ = opponent(side_);
    hash_ ^= zobrist::sideKey();
}

GameOutcome Board::checkWin(Pos last) const
{
    Color c = at(last);
    if (c == Cell::Empty)
        return GameOutcome::Ongoing;

    for (Pos d : Directions) {
        int count = 1;
        for (int sign : {-1, 1}) {
            int r = last.row + sign * d.row;
            int k = last.col + sign * d.col;
            while (inBounds(r, k) && at(r, k) == c) {
                count++;
                r += sign * d.row;
                k += sign * d.col;
            }
        }
        if (count >= 5)
            return winFor(c);
    }
    return GameOutcome::Ongoing;
}

bool Board::makesFive(Pos p, Color c) const
{
    for (Pos d : Directions) {
        int count = 1;
        for (int sign : {-1, 1}) {
            int r = p.row + sign * d.row;
            int k = p.col + sign * d.col;
            while (inBounds(r, k) && at(r, k) == c) {
                count++;
                r += sign * d.row;
                k += sign * d.col;
            }
        }
        if (count >= 5)
            return true;
    }
    return false;
}

std::vector<Pos> Board::legalMoves() const
{
    std::vector<Pos> moves;
    if (outcome() != GameOutcome::Ongoing)
        return moves;
    moves.reserve(cellCount() - stones_);
    for (int i = 0; i < cellCount(); i++)
        if (cells_[i] == Cell::Empty)
            moves.push_back(pos(i));
    return moves;
}

std::vector<Pos> Board::candidateMoves() const
{
    std::vector<Pos> moves;
    if (outcome() != GameOutcome::Ongoing)
        return moves;
    if (stones_ == 0) {
        moves.push_back({height_ / 2, width_ / 2});
        return moves;
    }
    for (int i = 0; i < cellCount(); i++)
        if (cells_[i] == Cell::Empty && near_[i] > 0)
            moves.push_back(pos(i));
    return moves;
}

HashKey Board::computeHash() const
{
    HashKey h = 0;
    for (int r = 0; r < height_; r++)
        for (int c = 0; c < width_; c++)
            if (at(r, c) != Cell::Empty)
                h ^= zobrist::stoneKey(at(r, c), r, c);
    if (side_ == Color::White)
        h ^= zobrist::sideKey();
    return h;
}

Board Board::colorSwapped() const
{
    Board b(height_, width_);
    for (const Move &m : history_) {
        b.put(m.pos, opponent(m.color));
        b.history_.push_back({m.pos, opponent(m.color), GameOutcome::Ongoing});
    }
    if (!b.history_.empty()) {
        GameOutcome o = outcome();
        if (o == GameOutcome::BlackWin)
            o = GameOutcome::WhiteWin;
        else if (o == GameOutcome::WhiteWin)
            o = GameOutcome::BlackWin;
        b.history_.back().outcomeAfter = o;
    }
    b.side_ = opponent(side_);
    b.hash_ = b.computeHash();
    return b;
}

Board Board::fromStones(int height,
                        int width,
                        std::span<const Pos> black,
                        std::span<const Pos> white)
{
    if (black.size() != white.size() && black.size() != white.size() + 1)
        throw EngineError(EngineError::Code::InvalidArgument,
                          "stone counts must satisfy #black - #white in {0, 1}");
    Board b(height, width);
    size_t n = black.size() + white.size();
    for (size_t i = 0; i < n; i++) {
        Pos p = (i % 2 == 0) ? black[i / 2] : white[i / 2];
        if (!b.inBounds(p) || b.at(p) != Cell::Empty)
            throw EngineError(EngineError::Code::InvalidArgument,
                              "stone out of bounds or placed twice");
        // Setup replay ignores intermediate wins; the final outcome is
        // recomputed from the whole board below.
        Color c = b.side_;
        b.put(p, c);
        b.side_ = opponent(c);
        b.hash_ ^= zobrist::sideKey();
        b.history_.push_back({p, c, GameOutcome::Ongoing});
    }
    if (!b.history_.empty()) {
        GameOutcome o = GameOutcome::Ongoing;
        for (const Move &m : b.history_) {
            o = b.checkWin(m.pos);
            if (o != GameOutcome::Ongoing)
                break;
        }
        if (o == GameOutcome::Ongoing && b.full())
            o = GameOutcome::Draw;
        b.history_.back().outcomeAfter = o;
    }
    return b;
}

bool operator==(const Board &a, const Board &b)
{
    if (a.height_ != b.height_ || a.width_ != b.width_ || a.cells_ != b.cells_
        || a.side_ != b.side_ || a.hash_ != b.hash_ || a.history_.size() != b.history_.size())
        return false;
    for (size_t i = 0; i < a.history_.size(); i++)
        if (a.history_[i].pos != b.history_[i].pos || a.history_[i].color != b.history_[i].color)
            return false;
    return true;
}

Board parsePosition(std::string_view text)
{
    std::vector<std::string> rows;
    char                     side = 0;
    std::istringstream       in {std::string(text)};
    std::string              line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        if (line.rfind("side ", 0) == 0) {
            if (line.size() != 6 || (line[5] != 'x' && line[5] != 'o'))
                throw EngineError(EngineError::Code::BadFormat, "bad side line: " + line);
            side = line[5];
            continue;
        }
        if (line.find_first_not_of(".xo") != std::string::npos)
            throw EngineError(EngineError::Code::BadFormat, "bad board row: " + line);
        rows.push_back(line);
    }
    if (rows.empty() || side == 0)
        throw EngineError(EngineError::Code::BadFormat, "position needs rows and a side line");
    for (const auto &r : rows)
        if (r.size() != rows[0].size())
            throw EngineError(EngineError::Code::BadFormat, "ragged board rows");

    std::vector<Pos> black, white;
    for (int r = 0; r < (int)rows.size(); r++)
        for (int c = 0; c < (int)rows[r].size(); c++) {
            if (rows[r][c] == 'x')
                black.push_back({r, c});
            else if (rows[r][c] == 'o')
                white.push_back({r, c});
        }
    Board b = Board::fromStones((int)rows.size(), (int)rows[0].size(), black, white);
    if ((b.sideToMove() == Color::Black) != (side == 'x'))
        throw EngineError(EngineError::Code::BadFormat, "side line disagrees with stone counts");
    return b;
}

std::string formatPosition(const Board &b)
{
    std::string out;
    for (int r = 0; r < b.height(); r++) {
        for (int c = 0; c < b.width(); c++) {
            Cell v = b.at(r, c);
            out += v == Cell::Empty ? '.' : v == Cell::Black ? 'x' : 'o';
        }
        out += '\n';
    }
    out += b.sideToMove() == Color::Black ? "side x\n" : "side o\n";
    return out;
}

}  // namespace gomoku
