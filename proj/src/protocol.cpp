#include "gomoku/protocol.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace gomoku {

namespace {

constexpr double SafetyMs = 30;

std::string upper(std::string s)
{
    for (char &c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

std::string trim(const std::string &s)
{
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parseInt(std::string_view s, long long &v)
{
    while (!s.empty() && s.front() == ' ')
        s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ')
        s.remove_suffix(1);
    if (s.empty())
        return false;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    return r.ec == std::errc {} && r.ptr == s.data() + s.size();
}

std::vector<std::string_view> splitComma(std::string_view s)
{
    std::vector<std::string_view> parts;
    size_t                        start = 0;
    for (size_t i = 0; i <= s.size(); i++)
        if (i == s.size() || s[i] == ',') {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return parts;
}

}  // namespace

Protocol::Protocol(Engine &engine, std::istream &in, std::ostream &out, Options opt)
    : engine_(engine)
    , in_(in)
    , out_(out)
    , opt_(std::move(opt))
{}

void Protocol::reply(const std::string &s)
{
    out_ << s << '\n';
    out_.flush();
}

void Protocol::run()
{
    std::string line;
    while (std::getline(in_, line))
        if (!handle(line))
            break;
}

bool Protocol::parseXY(const std::string &s, Pos &p, int *who) const
{
    auto parts = splitComma(s);
    if (parts.size() != (who ? 3u : 2u))
        return false;
    long long x, y;
    if (!parseInt(parts[0], x) || !parseInt(parts[1], y))
        return false;
    if (who) {
        long long w;
        if (!parseInt(parts[2], w))
            return false;
        *who = static_cast<int>(w);
    }
    if (!board_ || x < 0 || y < 0 || x >= board_->width() || y >= board_->height())
        return false;
    p = {static_cast<int>(y), static_cast<int>(x)};
    return true;
}

double Protocol::turnBudget() const
{
    if (timeoutTurn_ == 0)
        return 1;
    double turn = timeoutTurn_ > 0 ? timeoutTurn_ : engine_.config().turnMs;
    if (timeLeft_ > 0) {
        double share = timeLeft_ / 15;
        turn         = turn > 0 ? std::min(turn, share) : share;
    }
    else if (timeLeft_ == 0 && timeoutMatch_ > 0)
        return 1;
    if (turn <= 0)
        return 0;
    return std::max(1.0, turn * 0.9 - SafetyMs);
}

void Protocol::start(int height, int width)
{
    if (height < MinBoardSize || height > MaxBoardSize || width < MinBoardSize
        || width > MaxBoardSize) {
        board_.reset();
        error("unsupported size");
        return;
    }
    board_.emplace(height, width);
    engine_.newGame(height, width);
    reply("OK");
}

void Protocol::think()
{
    Board &b = *board_;
    if (b.outcome() != GameOutcome::Ongoing) {
        error("game is over");
        return;
    }

    double   budget = turnBudget();
    StopFlag stop {false};
    InfoCallback info;
    if (opt_.messages)
        info = [this, &b](const SearchInfo &si) {
            std::ostringstream ss;
            ss << "MESSAGE depth " << si.depth << " score " << si.score << " nodes " << si.nodes
               << " ms " << static_cast<long long>(si.elapsedMs) << " pv";
            for (Pos p : si.pv)
                ss << ' ' << p.col << ',' << p.row;
            reply(ss.str());
        };

    Board work = b;
    std::packaged_task<SearchResult()> task(
        [&] { return engine_.think(work, budget, &stop, info); });
    auto        result = task.get_future();
    std::thread worker(std::move(task));
    if (budget > 0
        && result.wait_for(std::chrono::duration<double, std::milli>(budget))
               != std::future_status::ready)
        stop = true;
    result.wait();
    worker.join();

    SearchResult r;
    try {
        r = result.get();
    }
    catch (const std::exception &e) {
        error(e.what());
        return;
    }
    if (b.place(r.best) != MoveStatus::Ok) {
        error("engine produced no legal move");
        return;
    }
    reply(std::to_string(r.best.col) + "," + std::to_string(r.best.row));
}

void Protocol::finishBoardBlock()
{
    inBoardBlock_ = false;
    if (blockError_) {
        error("malformed BOARD block");
        return;
    }
    const std::vector<Pos> *black = &own_, *white = &theirs_;
    if (theirs_.size() == own_.size() + 1)
        std::swap(black, white);
    else if (theirs_.size() != own_.size()) {
        error("stone counts do not allow the engine to move");
        return;
    }
    try {
        Board b = Board::fromStones(board_->height(), board_->width(), *black, *white);
        *board_ = std::move(b);
    }
    catch (const EngineError &e) {
        error(e.what());
        return;
    }
    think();
}

bool Protocol::handle(const std::string &raw)
{
    std::string line = trim(raw);
    if (line.empty())
        return true;

    if (inBoardBlock_) {
        if (upper(line) == "DONE") {
            finishBoardBlock();
            return true;
        }
        Pos p;
        int who = 0;
        if (!parseXY(line, p, &who) || (who != 1 && who != 2))
            blockError_ = true;
        else
            (who == 1 ? own_ : theirs_).push_back(p);
        return true;
    }

    std::string cmd, rest;
    {
        size_t sp = line.find(' ');
        cmd       = upper(line.substr(0, sp));
        rest      = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    }

    if (cmd == "END")
        return false;
    if (cmd == "ABOUT") {
        reply("name=\"" + opt_.name + "\", version=\"" + opt_.version
              + "\", author=\"gomoku contributors\", country=\"\"");
        return true;
    }
    if (cmd == "INFO") {
        std::istringstream ss(rest);
        std::string        key, value;
        ss >> key >> value;
        long long v;
        if (key == "timeout_turn" || key == "timeout_match" || key == "time_left") {
            if (!parseInt(value, v) || v < 0) {
                error("bad INFO value");
                return true;
            }
            (key == "timeout_turn" ? timeoutTurn_ : key == "timeout_match" ? timeoutMatch_ : timeLeft_) =
                static_cast<double>(v);
        }
        else if (key == "max_memory") {
            if (!parseInt(value, v) || v < 0)
                error("bad INFO value");
        }
        return true;
    }
    if (cmd == "START") {
        long long n;
        if (!parseInt(rest, n) || n < MinBoardSize || n > MaxBoardSize) {
            board_.reset();
            error("unsupported size");
            return true;
        }
        start(static_cast<int>(n), static_cast<int>(n));
        return true;
    }
    if (cmd == "RECTSTART") {
        auto      parts = splitComma(rest);
        long long w, h;
        if (parts.size() != 2 || !parseInt(parts[0], w) || !parseInt(parts[1], h) || w < MinBoardSize
            || h < MinBoardSize || w > MaxBoardSize || h > MaxBoardSize) {
            board_.reset();
            error("unsupported size");
            return true;
        }
        start(static_cast<int>(h), static_cast<int>(w));
        return true;
    }

    if (cmd != "TURN" && cmd != "BEGIN" && cmd != "BOARD" && cmd != "RESTART"
        && cmd != "TAKEBACK") {
        error("unknown command " + cmd);
        return true;
    }
    if (!board_) {
        error("no game started");
        return true;
    }

    if (cmd == "RESTART") {
        start(board_->height(), board_->width());
    }
    else if (cmd == "BEGIN") {
        if (board_->stoneCount() != 0)
            error("BEGIN on a non-empty board");
        else
            think();
    }
    else if (cmd == "TURN") {
        Pos p;
        if (!parseXY(rest, p)) {
            error("bad coordinates");
            return true;
        }
        MoveStatus s = board_->place(p);
        if (s != MoveStatus::Ok) {
            error("illegal move: " + toString(s));
            return true;
        }
        think();
    }
    else if (cmd == "BOARD") {
        inBoardBlock_ = true;
        blockError_   = false;
        own_.clear();
        theirs_.clear();
    }
    else if (cmd == "TAKEBACK") {
        Pos p;
        if (!parseXY(rest, p) || board_->lastMove() != p) {
            error("bad TAKEBACK");
            return true;
        }
        board_->undo();
        reply("OK");
    }
    return true;
}

}  // namespace gomoku
