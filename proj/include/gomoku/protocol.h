#pragma once

#include "engine.h"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gomoku {

/// Gomocup text protocol. Coordinates on the wire are `x,y` = column,row.
class Protocol
{
public:
    struct Options
    {
        bool        messages = false;  // emit MESSAGE lines with search progress
        std::string name     = "mixnet";
        std::string version  = "1.0";
    };

    Protocol(Engine &engine, std::istream &in, std::ostream &out, Options opt);
    Protocol(Engine &engine, std::istream &in, std::ostream &out)
        : Protocol(engine, in, out, Options {})
    {}

    /// Process commands until END or end of input.
    void run();

    /// Handle one line. Returns false after END.
    bool handle(const std::string &line);

    const std::optional<Board> &board() const { return board_; }

    /// Search budget in milliseconds for the next move (0: none).
    double turnBudget() const;

private:
    void reply(const std::string &s);
    void error(const std::string &s) { reply("ERROR " + s); }
    void start(int height, int width);
    void think();
    void finishBoardBlock();
    bool parseXY(const std::string &s, Pos &p, int *who = nullptr) const;

    Engine       &engine_;
    std::istream &in_;
    std::ostream &out_;
    Options       opt_;

    std::optional<Board> board_;
    bool                 inBoardBlock_ = false;
    bool                 blockError_   = false;
    std::vector<Pos>     own_, theirs_;

    double timeoutTurn_  = -1;  // -1: unset
    double timeoutMatch_ = -1;
    double timeLeft_     = -1;
};

}  // namespace gomoku
