// Serial reference vs OpenMP kernels: codebook bake and accumulator rebuild.

#include "gomoku/evaluator.h"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <iostream>
#include <random>

using namespace gomoku;
using namespace gomoku::mixnet;

namespace {

template <typename F>
double timeMs(F &&f, int reps = 1)
{
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; i++)
        f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() / reps;
}

Board randomBoard(int size, int stones, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    Board           b(size, size);
    while (b.stoneCount() < stones && b.outcome() == GameOutcome::Ongoing) {
        auto moves = b.legalMoves();
        b.place(moves[std::uniform_int_distribution<size_t>(0, moves.size() - 1)(rng)]);
    }
    return b;
}

}  // namespace

int main(int argc, char **argv)
{
    CLI::App    app {"kernel benchmark"};
    std::string net   = "tiny";
    int         size  = 15;
    int         reps  = 200;
    app.add_option("--net", net)->check(CLI::IsMember({"tiny", "small", "medium"}));
    app.add_option("--size", size)->check(CLI::Range(MinBoardSize, MaxBoardSize));
    app.add_option("--reps", reps)->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    NetConfig cfg = net == "tiny" ? NetConfig::tiny() : net == "small" ? NetConfig::small() : NetConfig::medium();
    auto      w   = NetWeights::random(cfg, 1);
    std::cout << "threads " << omp_get_max_threads() << ", net " << net << "\n";

    Codebook serial, parallel;
    double   ts = timeMs([&] { serial = bakeCodebookSerial(w.mapping, cfg); });
    double   tp = timeMs([&] { parallel = bakeCodebook(w.mapping, cfg); });
    std::cout << "bake      serial " << ts << " ms  openmp " << tp << " ms  speedup " << ts / tp
              << "  equal " << (serial == parallel) << "\n";

    auto      shared = Net::build(w, std::move(parallel));
    Board     b      = randomBoard(size, size * size / 4, 3);
    Evaluator e1(shared, size, size), e2(shared, size, size);
    double    rs = timeMs([&] { e1.accumulator().refresh(b); }, reps);
    double    rp = timeMs([&] { e2.accumulator().refreshParallel(b); }, reps);
    bool      eq = e1.accumulator().snapshot(Color::Black) == e2.accumulator().snapshot(Color::Black)
              && e1.accumulator().snapshot(Color::White) == e2.accumulator().snapshot(Color::White);
    std::cout << "rebuild   serial " << rs * 1000 << " us  openmp " << rp * 1000 << " us  speedup " << rs / rp
              << "  equal " << eq << "\n";
    return serial == shared->codebook && eq ? 0 : 1;
}
