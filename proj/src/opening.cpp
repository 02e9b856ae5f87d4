#include "gomoku/opening.h"

#include <charconv>
#include <fstream>
#include <sstream>

namespace gomoku {

namespace {

bool parseMove(std::string_view tok, Pos &p)
{
    size_t comma = tok.find(',');
    if (comma == std::string_view::npos)
        return false;
    auto num = [](std::string_view s, int &v) {
        auto r = std::from_chars(s.data(), s.data() + s.size(), v);
        return !s.empty() && r.ec == std::errc {} && r.ptr == s.data() + s.size();
    };
    return num(tok.substr(0, comma), p.row) && num(tok.substr(comma + 1), p.col);
}

}  // namespace

OpeningBook OpeningBook::parse(std::string_view text, int size)
{
    OpeningBook        book;
    std::istringstream in {std::string(text)};
    std::string        line;
    int                lineNo = 0;
    while (std::getline(in, line)) {
        lineNo++;
        if (auto h = line.find('#'); h != std::string::npos)
            line.erase(h);
        std::istringstream ls(line);
        std::string        flag;
        if (!(ls >> flag))
            continue;
        auto where = "openings line " + std::to_string(lineNo);
        if (flag != "balanced" && flag != "unbalanced")
            throw EngineError(EngineError::Code::BadFormat, where + ": expected balanced/unbalanced");

        Opening o;
        o.balanced = flag == "balanced";
        Board       b(size, size);
        std::string tok;
        while (ls >> tok) {
            Pos p;
            if (!parseMove(tok, p))
                throw EngineError(EngineError::Code::BadFormat, where + ": bad move " + tok);
            if (b.place(p) != MoveStatus::Ok)
                throw EngineError(EngineError::Code::InvalidArgument, where + ": illegal move " + tok);
            o.moves.push_back(p);
        }
        if (b.outcome() != GameOutcome::Ongoing)
            throw EngineError(EngineError::Code::InvalidArgument, where + ": game already decided");
        book.openings.push_back(std::move(o));
    }
    return book;
}

OpeningBook OpeningBook::load(const std::string &path, int size)
{
    std::ifstream in(path);
    if (!in)
        throw EngineError(EngineError::Code::IOError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), size);
}

Board OpeningBook::board(std::size_t i, int size) const
{
    Board b(size, size);
    for (Pos p : openings.at(i).moves)
        if (b.place(p) != MoveStatus::Ok)
            throw EngineError(EngineError::Code::InvalidArgument, "opening does not fit the board");
    return b;
}

}  // namespace gomoku
