#include "gomoku/engine.h"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace gomoku {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string &msg)
{
    throw EngineError(EngineError::Code::InvalidArgument, "config: " + msg);
}

template <typename T>
T get(const json &j, const std::string &key)
{
    try {
        if constexpr (std::is_same_v<T, bool>) {
            if (!j.is_boolean())
                bad(key + " must be a boolean");
        }
        else if constexpr (std::is_arithmetic_v<T>) {
            if (!j.is_number())
                bad(key + " must be a number");
            if constexpr (std::is_integral_v<T>)
                if (!j.is_number_integer() || (std::is_unsigned_v<T> && j.get<long long>() < 0))
                    bad(key + " must be a non-negative integer");
        }
        else if (!j.is_string())
            bad(key + " must be a string");
        return j.get<T>();
    }
    catch (const json::exception &e) {
        bad(key + ": " + e.what());
    }
}

mixnet::Precision parsePrecision(const json &j, const std::string &key)
{
    auto s = get<std::string>(j, key);
    if (s == "quantized")
        return mixnet::Precision::Quantized;
    if (s == "float")
        return mixnet::Precision::Float;
    bad(key + " must be \"quantized\" or \"float\"");
}

std::string precisionName(mixnet::Precision p)
{
    return p == mixnet::Precision::Float ? "float" : "quantized";
}

void readMcts(const json &j, mcts::Params &p)
{
    if (!j.is_object())
        bad("mcts must be an object");
    for (auto &[k, v] : j.items()) {
        if (k == "cpuctInit") p.cpuctInit = get<double>(v, k);
        else if (k == "cpuctLog") p.cpuctLog = get<double>(v, k);
        else if (k == "cpuctBase") p.cpuctBase = get<double>(v, k);
        else if (k == "fpu") p.fpu = get<double>(v, k);
        else if (k == "lcbZ") p.lcbZ = get<double>(v, k);
        else if (k == "playouts") p.playouts = get<std::uint64_t>(v, k);
        else if (k == "timeMs") p.timeMs = get<double>(v, k);
        else if (k == "rulePruning") p.rulePruning = get<bool>(v, k);
        else if (k == "precision") p.precision = parsePrecision(v, k);
        else bad("unknown key mcts." + k);
    }
}

void readAlphaBeta(const json &j, ab::Params &p)
{
    if (!j.is_object())
        bad("alphabeta must be an object");
    for (auto &[k, v] : j.items()) {
        if (k == "maxDepth") p.maxDepth = get<int>(v, k);
        else if (k == "useTT") p.useTT = get<bool>(v, k);
        else if (k == "futility") p.futility = get<bool>(v, k);
        else if (k == "lmr") p.lmr = get<bool>(v, k);
        else if (k == "nullMove") p.nullMove = get<bool>(v, k);
        else if (k == "singular") p.singular = get<bool>(v, k);
        else if (k == "aspiration") p.aspiration = get<bool>(v, k);
        else if (k == "stopOnMate") p.stopOnMate = get<bool>(v, k);
        else if (k == "futilityMargin") {
            if (!v.is_array() || v.size() != 4)
                bad("futilityMargin must be an array of 4 integers");
            for (int i = 0; i < 4; i++)
                p.futilityMargin[i] = get<int>(v[i], k);
        }
        else if (k == "lmrBase") p.lmrBase = get<double>(v, k);
        else if (k == "lmrDivisor") p.lmrDivisor = get<double>(v, k);
        else if (k == "nullReduction") p.nullReduction = get<int>(v, k);
        else if (k == "singularMargin") p.singularMargin = get<int>(v, k);
        else if (k == "aspirationWindow") p.aspirationWindow = get<int>(v, k);
        else if (k == "vcfNodeCap") p.vcfNodeCap = get<std::uint64_t>(v, k);
        else if (k == "maxBranch") p.maxBranch = get<int>(v, k);
        else if (k == "timeMs") p.timeMs = get<double>(v, k);
        else if (k == "precision") p.precision = parsePrecision(v, k);
        else bad("unknown key alphabeta." + k);
    }
}

mixnet::NetConfig namedConfig(const std::string &name)
{
    if (name == "tiny") return mixnet::NetConfig::tiny();
    if (name == "small") return mixnet::NetConfig::small();
    if (name == "medium") return mixnet::NetConfig::medium();
    if (name == "large") return mixnet::NetConfig::large();
    bad("randomNet must be one of tiny, small, medium, large");
}

}  // namespace

std::string toString(Backend b)
{
    return b == Backend::Mcts ? "mcts" : "alphabeta";
}

EngineConfig EngineConfig::fromJson(std::string_view text)
{
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        bad("malformed JSON");
    if (!j.is_object())
        bad("top level must be an object");

    EngineConfig c;
    for (auto &[k, v] : j.items()) {
        if (k == "weights") c.weights = get<std::string>(v, k);
        else if (k == "codebookCache") c.codebookCache = get<std::string>(v, k);
        else if (k == "randomNet") c.randomNet = get<std::string>(v, k);
        else if (k == "randomSeed") c.randomSeed = get<std::uint64_t>(v, k);
        else if (k == "backend") {
            auto s = get<std::string>(v, k);
            if (s == "mcts") c.backend = Backend::Mcts;
            else if (s == "alphabeta") c.backend = Backend::AlphaBeta;
            else bad("backend must be \"mcts\" or \"alphabeta\"");
        }
        else if (k == "mcts") readMcts(v, c.mcts);
        else if (k == "alphabeta") readAlphaBeta(v, c.alphabeta);
        else if (k == "ttMiB") c.ttMiB = get<std::size_t>(v, k);
        else if (k == "turnMs") c.turnMs = get<double>(v, k);
        else if (k == "matchMs") c.matchMs = get<double>(v, k);
        else if (k == "boardSize") c.boardSize = get<int>(v, k);
        else bad("unknown key " + k);
    }
    c.validate();
    return c;
}

EngineConfig EngineConfig::fromFile(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw EngineError(EngineError::Code::IOError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return fromJson(ss.str());
}

std::string EngineConfig::toJson() const
{
    json j;
    j["weights"]       = weights;
    j["codebookCache"] = codebookCache;
    j["randomNet"]     = randomNet;
    j["randomSeed"]    = randomSeed;
    j["backend"]       = toString(backend);
    j["mcts"]          = {{"cpuctInit", mcts.cpuctInit},
                          {"cpuctLog", mcts.cpuctLog},
                          {"cpuctBase", mcts.cpuctBase},
                          {"fpu", mcts.fpu},
                          {"lcbZ", mcts.lcbZ},
                          {"playouts", mcts.playouts},
                          {"timeMs", mcts.timeMs},
                          {"rulePruning", mcts.rulePruning},
                          {"precision", precisionName(mcts.precision)}};
    auto &a            = alphabeta;
    j["alphabeta"]     = {{"maxDepth", a.maxDepth},
                          {"useTT", a.useTT},
                          {"futility", a.futility},
                          {"lmr", a.lmr},
                          {"nullMove", a.nullMove},
                          {"singular", a.singular},
                          {"aspiration", a.aspiration},
                          {"stopOnMate", a.stopOnMate},
                          {"futilityMargin", a.futilityMargin},
                          {"lmrBase", a.lmrBase},
                          {"lmrDivisor", a.lmrDivisor},
                          {"nullReduction", a.nullReduction},
                          {"singularMargin", a.singularMargin},
                          {"aspirationWindow", a.aspirationWindow},
                          {"vcfNodeCap", a.vcfNodeCap},
                          {"maxBranch", a.maxBranch},
                          {"timeMs", a.timeMs},
                          {"precision", precisionName(a.precision)}};
    j["ttMiB"]         = ttMiB;
    j["turnMs"]        = turnMs;
    j["matchMs"]       = matchMs;
    j["boardSize"]     = boardSize;
    return j.dump(2);
}

void EngineConfig::validate() const
{
    if (boardSize < MinBoardSize || boardSize > MaxBoardSize)
        bad("boardSize must be in [5, 32]");
    if (weights.empty())
        namedConfig(randomNet);
    if (turnMs < 0 || matchMs < 0 || mcts.timeMs < 0 || alphabeta.timeMs < 0)
        bad("time limits must be non-negative");
    if (mcts.playouts == 0 && mcts.timeMs == 0 && turnMs == 0)
        bad("mcts needs a playout or time budget");
    if (mcts.cpuctBase <= 0 || mcts.lcbZ < 0 || mcts.fpu < 0)
        bad("mcts constants out of range");
    if (alphabeta.maxDepth < 1 || alphabeta.maxDepth >= ab::MaxPly)
        bad("alphabeta.maxDepth out of range");
    if (alphabeta.maxBranch < 0 || alphabeta.nullReduction < 0 || alphabeta.lmrDivisor <= 0)
        bad("alphabeta constants out of range");
    if (ttMiB == 0 || ttMiB > (1u << 16))
        bad("ttMiB out of range");
}

std::shared_ptr<const mixnet::Net> loadNet(const EngineConfig &cfg)
{
    if (!cfg.weights.empty()) {
        std::optional<std::filesystem::path> cache;
        if (!cfg.codebookCache.empty())
            cache = cfg.codebookCache;
        return mixnet::Net::load(cfg.weights, cache);
    }
    return mixnet::Net::build(mixnet::NetWeights::random(namedConfig(cfg.randomNet), cfg.randomSeed));
}

Engine::Engine(const EngineConfig &cfg, std::shared_ptr<const mixnet::Net> net)
    : cfg_(cfg)
    , net_(std::move(net))
    , tt_(cfg.ttMiB)
{
    cfg_.validate();
    newGame(cfg_.boardSize, cfg_.boardSize);
}

void Engine::newGame(int height, int width)
{
    eval_ = std::make_unique<mixnet::Evaluator>(net_, height, width);
    tt_.clear();
}

mixnet::Evaluation Engine::evaluate(const Board &board)
{
    if (eval_->accumulator().height() != board.height()
        || eval_->accumulator().width() != board.width())
        newGame(board.height(), board.width());
    auto prec = cfg_.backend == Backend::Mcts ? cfg_.mcts.precision : cfg_.alphabeta.precision;
    return eval_->evaluate(board, prec);
}

SearchResult Engine::think(Board &board, double timeMs, const StopFlag *stop, const InfoCallback &info)
{
    if (eval_->accumulator().height() != board.height()
        || eval_->accumulator().width() != board.width())
        newGame(board.height(), board.width());

    double limit = timeMs > 0 ? timeMs : cfg_.turnMs;
    SearchResult r;
    if (cfg_.backend == Backend::Mcts) {
        mcts::Params p = cfg_.mcts;
        if (limit > 0 && (p.timeMs == 0 || limit < p.timeMs))
            p.timeMs = limit;
        mcts::Searcher s(*eval_, p);
        r = s.search(board, stop, info);
    }
    else {
        ab::Params p = cfg_.alphabeta;
        if (limit > 0 && (p.timeMs == 0 || limit < p.timeMs))
            p.timeMs = limit;
        tt_.newSearch();
        ab::Searcher s(*eval_, tt_, p);
        r = s.search(board, stop, info);
    }

    if (!board.inBounds(r.best) || board.at(r.best) != Cell::Empty) {
        auto moves = board.candidateMoves();
        if (moves.empty())
            throw EngineError(EngineError::Code::NoLegalMove, "no legal move");
        r.best = moves.front();
        r.pv   = {r.best};
    }
    return r;
}

}  // namespace gomoku
