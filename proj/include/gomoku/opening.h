#pragma once

#include "board.h"

#include <string>
#include <string_view>
#include <vector>

namespace gomoku {

struct Opening
{
    std::vector<Pos> moves;
    bool             balanced = true;
};

/// Plain text, one opening per line: `balanced` or `unbalanced`, then
/// `row,col` moves separated by spaces. `#` starts a comment.
struct OpeningBook
{
    std::vector<Opening> openings;

    /// Throws EngineError(BadFormat) on syntax errors and
    /// EngineError(InvalidArgument) when a line is not a legal, unfinished
    /// game on a `size` x `size` board.
    static OpeningBook parse(std::string_view text, int size = DefaultBoardSize);
    static OpeningBook load(const std::string &path, int size = DefaultBoardSize);

    Board board(std::size_t i, int size = DefaultBoardSize) const;
    std::size_t size() const { return openings.size(); }
};

}  // namespace gomoku
