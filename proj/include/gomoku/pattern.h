#pragma once

#include "board.h"

#include <array>
#include <cstdint>

namespace gomoku::pattern {

constexpr int HalfLength = 5;
constexpr int MaxLength  = 2 * HalfLength + 1;

/// Pattern group sharing one mapping function.
enum class Group : int { HV = 0, DI = 1 };

constexpr Group groupOf(int dir)
{
    return dir < 2 ? Group::HV : Group::DI;
}

constexpr std::array<std::uint32_t, MaxLength + 1> Pow3 = [] {
    std::array<std::uint32_t, MaxLength + 1> p {};
    p[0] = 1;
    for (int i = 1; i <= MaxLength; i++)
        p[i] = p[i - 1] * 3;
    return p;
}();

/// Start offset of each (left, right) block. Blocks are laid out
/// lexicographically: (0,0), (0,1), ..., (0,5), (1,0), ..., (5,5).
constexpr std::array<std::array<std::uint32_t, HalfLength + 1>, HalfLength + 1> Base = [] {
    std::array<std::array<std::uint32_t, HalfLength + 1>, HalfLength + 1> b {};
    std::uint32_t offset = 0;
    for (int l = 0; l <= HalfLength; l++)
        for (int r = 0; r <= HalfLength; r++) {
            b[l][r] = offset;
            offset += Pow3[l + 1 + r];
        }
    return b;
}();

constexpr std::uint32_t PatternCount =
    Base[HalfLength][HalfLength] + Pow3[MaxLength];
static_assert(PatternCount == 397488);

/// Border-truncated line through a cell. Digits are perspective-relative:
/// 0 empty, 1 own stone, 2 opponent stone. cells[left] is the center.
struct LinePattern
{
    int                                 left  = 0;
    int                                 right = 0;
    std::array<std::uint8_t, MaxLength> cells {};

    int  length() const { return left + 1 + right; }
    bool operator==(const LinePattern &) const = default;
};

/// Number of on-board steps (capped at 5) from `p` toward -dir and +dir.
int leftExtent(int height, int width, Pos p, int dir);
int rightExtent(int height, int width, Pos p, int dir);

LinePattern   extract(const Board &board, Pos p, int dir, Color perspective);
std::uint32_t index(const LinePattern &p);
LinePattern   decode(std::uint32_t id);

constexpr std::uint8_t digitFor(Cell c, Color perspective)
{
    return c == Cell::Empty ? 0 : (c == perspective ? 1 : 2);
}

struct CellDir
{
    Pos cell;
    int dir;
};

/// Every (cell, direction) whose line window contains `p`.
struct AffectedCells
{
    std::array<CellDir, 4 * MaxLength> items;
    int                                count = 0;

    const CellDir *begin() const { return items.data(); }
    const CellDir *end() const { return items.data() + count; }
    int            size() const { return count; }
};

AffectedCells affectedCells(int height, int width, Pos p);

}  // namespace gomoku::pattern
