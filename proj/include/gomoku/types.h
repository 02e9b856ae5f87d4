#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gomoku {

/// Cell state. The numeric codes double as base-3 digits in pattern encoding.
enum class Cell : std::uint8_t { Empty = 0, Black = 1, White = 2 };

using Color = Cell;

constexpr Color opponent(Color c)
{
    return c == Color::Black ? Color::White : Color::Black;
}

constexpr int colorIndex(Color c)
{
    return c == Color::Black ? 0 : 1;
}

enum class GameOutcome : std::uint8_t { Ongoing, BlackWin, WhiteWin, Draw };

constexpr GameOutcome winFor(Color c)
{
    return c == Color::Black ? GameOutcome::BlackWin : GameOutcome::WhiteWin;
}

struct Pos
{
    int row = -1;
    int col = -1;

    constexpr bool valid() const { return row >= 0 && col >= 0; }
    friend constexpr bool operator==(Pos, Pos) = default;
};

constexpr Pos NullPos {};

constexpr int MinBoardSize     = 5;
constexpr int MaxBoardSize     = 32;
constexpr int DefaultBoardSize = 15;

/// Error raised at library boundaries (file formats, configuration, API misuse).
class EngineError : public std::runtime_error
{
public:
    enum class Code {
        ConfigMismatch,
        NonFiniteWeight,
        BadFormat,
        IOError,
        EmptyJournal,
        BudgetZero,
        NoLegalMove,
        InvalidArgument,
    };

    EngineError(Code code, const std::string &what) : std::runtime_error(what), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

std::string toString(GameOutcome o);

}  // namespace gomoku
