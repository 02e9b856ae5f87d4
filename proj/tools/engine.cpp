// Command line front end.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 I/O or file
// format error, 3 runtime error.

#include "gomoku/bench.h"
#include "gomoku/match.h"
#include "gomoku/pattern.h"
#include "gomoku/protocol.h"
#include "gomoku/service.h"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gomoku;

namespace {

enum ExitCode { Ok = 0, Usage = 1, IOFormat = 2, Runtime = 3 };

int exitCodeFor(const EngineError &e)
{
    switch (e.code()) {
    case EngineError::Code::InvalidArgument: return Usage;
    case EngineError::Code::IOError:
    case EngineError::Code::BadFormat:
    case EngineError::Code::ConfigMismatch:
    case EngineError::Code::NonFiniteWeight: return IOFormat;
    default: return Runtime;
    }
}

struct Common
{
    std::string config;
    std::string weights;
    std::string cache;
    std::string backend;

    EngineConfig load() const
    {
        EngineConfig c = config.empty() ? EngineConfig {} : EngineConfig::fromFile(config);
        if (!weights.empty())
            c.weights = weights;
        else if (c.weights.empty())
            if (const char *env = std::getenv("MIXNET_WEIGHTS"))
                c.weights = env;
        if (!cache.empty())
            c.codebookCache = cache;
        if (backend == "mcts")
            c.backend = Backend::Mcts;
        else if (backend == "alphabeta")
            c.backend = Backend::AlphaBeta;
        c.validate();
        return c;
    }
};

void addCommon(CLI::App *app, Common &c)
{
    app->add_option("--config", c.config, "engine configuration (JSON)");
    app->add_option("--weights", c.weights, "MIXW weight file (default: $MIXNET_WEIGHTS)");
    app->add_option("--cache", c.cache, "MIXC codebook cache");
    app->add_option("--backend", c.backend, "search backend")->check(CLI::IsMember({"mcts", "alphabeta"}));
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw EngineError(EngineError::Code::IOError, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App app {"Mixnet gomoku engine"};
    app.require_subcommand(1);

    Common common;

    auto *proto    = app.add_subcommand("proto", "Gomocup protocol on stdin/stdout");
    bool  messages = false;
    addCommon(proto, common);
    proto->add_flag("--messages", messages, "emit MESSAGE lines with search progress");

    auto        *bench = app.add_subcommand("bench", "evaluation and search speed report");
    BenchOptions bopt;
    addCommon(bench, common);
    bench->add_option("--positions", bopt.positions)->check(CLI::PositiveNumber);
    bench->add_option("--depth", bopt.abDepth)->check(CLI::PositiveNumber);
    bench->add_option("--playouts", bopt.playouts)->check(CLI::PositiveNumber);

    auto        *match = app.add_subcommand("match", "engine match over an opening book");
    std::string  configA, configB, openings = "data/openings.txt", records;
    MatchOptions mopt;
    mopt.games = 24;
    match->add_option("--a", configA, "configuration of engine A")->required();
    match->add_option("--b", configB, "configuration of engine B")->required();
    match->add_option("--openings", openings);
    match->add_option("--games", mopt.games)->check(CLI::PositiveNumber);
    match->add_option("--turn-ms", mopt.turnMs);
    match->add_option("--max-plies", mopt.maxPlies);
    match->add_option("--records", records, "write game records here");

    auto       *serve = app.add_subcommand("serve", "HTTP analysis service");
    int         port  = 8080;
    std::string host  = "127.0.0.1";
    addCommon(serve, common);
    serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve->add_option("--host", host);

    auto       *bake = app.add_subcommand("bake", "bake a codebook cache from weights");
    std::string bakeWeights, bakeOut;
    bake->add_option("--weights", bakeWeights)->required();
    bake->add_option("--out", bakeOut)->required();

    auto       *init = app.add_subcommand("init-weights", "write seeded random weights");
    std::string initNet = "tiny", initOut;
    std::uint64_t initSeed = 1;
    init->add_option("--net", initNet)->check(CLI::IsMember({"tiny", "small", "medium", "large"}));
    init->add_option("--seed", initSeed);
    init->add_option("--out", initOut)->required();

    auto *dumpPatterns = app.add_subcommand("dump-patterns", "list pattern indices and digits");
    std::uint32_t dumpFirst = 0, dumpCount = 20;
    dumpPatterns->add_option("--first", dumpFirst);
    dumpPatterns->add_option("--count", dumpCount);

    auto       *dumpFeatures = app.add_subcommand("dump-features", "print F' for a position file");
    std::string positionFile;
    addCommon(dumpFeatures, common);
    dumpFeatures->add_option("--position", positionFile)->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        if (*proto) {
            Engine   engine(common.load());
            Protocol::Options opt;
            opt.messages = messages;
            Protocol p(engine, std::cin, std::cout, opt);
            p.run();
        }
        else if (*bench) {
            auto cfg = common.load();
            std::cout << formatBench(runBench(loadNet(cfg), bopt));
        }
        else if (*match) {
            auto   book = OpeningBook::load(openings, mopt.boardSize);
            Engine a(EngineConfig::fromFile(configA));
            Engine b(EngineConfig::fromFile(configB));
            EnginePlayer pa("A", a), pb("B", b);
            auto   r = playMatch(pa, pb, book, mopt);
            std::cout << "games " << r.games << "  +" << r.winsA << " -" << r.lossesA << " =" << r.draws
                      << "\nscore " << r.score << "\nelo " << r.elo << " [" << r.eloLow << ", "
                      << r.eloHigh << "]\n";
            if (!records.empty()) {
                std::ofstream out(records);
                if (!out)
                    throw EngineError(EngineError::Code::IOError, "cannot write " + records);
                for (size_t i = 0; i < r.records.size(); i++)
                    out << formatRecord(r.records[i], int(i + 1), "A", "B") << "\n";
            }
        }
        else if (*serve) {
            auto            cfg = common.load();
            AnalysisService service(cfg, loadNet(cfg));
            Server          server(service);
            int             bound = server.bind(host, port);
            if (bound < 0)
                throw EngineError(EngineError::Code::IOError, "cannot bind " + host + ":" + std::to_string(port));
            std::cerr << "listening on " << host << ":" << bound << std::endl;
            if (!server.run())
                return Runtime;
        }
        else if (*bake) {
            auto w   = mixnet::loadWeights(bakeWeights);
            auto net = mixnet::Net::build(w);
            std::ofstream out(bakeOut, std::ios::binary);
            if (!out)
                throw EngineError(EngineError::Code::IOError, "cannot write " + bakeOut);
            mixnet::writeCodebook(net->codebook, net->digest, out);
            std::cout << "baked " << pattern::PatternCount << " patterns x 2 groups, digest " << std::hex
                      << net->digest << std::dec << "\n";
        }
        else if (*init) {
            mixnet::NetConfig cfg = initNet == "tiny"     ? mixnet::NetConfig::tiny()
                                    : initNet == "small"  ? mixnet::NetConfig::small()
                                    : initNet == "medium" ? mixnet::NetConfig::medium()
                                                          : mixnet::NetConfig::large();
            mixnet::saveWeights(mixnet::NetWeights::random(cfg, initSeed), initOut);
        }
        else if (*dumpPatterns) {
            for (std::uint64_t id = dumpFirst;
                 id < std::min<std::uint64_t>(pattern::PatternCount, std::uint64_t(dumpFirst) + dumpCount);
                 id++) {
                auto p = pattern::decode(static_cast<std::uint32_t>(id));
                std::cout << id << " L" << p.left << " R" << p.right << " ";
                for (int i = 0; i < p.length(); i++)
                    std::cout << (i == p.left ? "[" : "") << ".xo"[p.cells[i]] << (i == p.left ? "]" : "");
                std::cout << "\n";
            }
            std::cout << "total " << pattern::PatternCount << "\n";
        }
        else if (*dumpFeatures) {
            auto              cfg   = common.load();
            Board             board = parsePosition(slurp(positionFile));
            mixnet::Evaluator ev(loadNet(cfg), board.height(), board.width());
            ev.sync(board);
            auto f = ev.accumulator().featureMap(board.sideToMove());
            for (int i = 0; i < board.cellCount(); i++) {
                Pos p = board.pos(i);
                std::cout << p.row << "," << p.col;
                for (int c = 0; c < f.channels; c++)
                    std::cout << " " << f.cell(i)[c];
                std::cout << "\n";
            }
        }
    }
    catch (const EngineError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exitCodeFor(e);
    }
    catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return Runtime;
    }
    return Ok;
}
