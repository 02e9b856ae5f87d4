#pragma once

#include "engine.h"

#include <cstdint>
#include <string>
#include <vector>

namespace gomoku {

/// Fixed suite of ongoing positions built from seeded random play near the
/// existing stones.
std::vector<Board> benchPositions(int count = 20, int size = DefaultBoardSize, std::uint64_t seed = 2024);

struct BenchOptions
{
    int           positions = 20;
    int           abDepth   = 4;
    int           abBranch  = 12;
    std::uint64_t playouts  = 200;
    int           childMoves = 16;  // incremental evaluations per position
};

struct BenchReport
{
    double        fullEvalsPerSec        = 0;
    double        incrementalEvalsPerSec = 0;
    std::uint64_t fullEvals = 0, incrementalEvals = 0;

    std::uint64_t lookupsInteriorMove = 0;  // both perspectives
    std::uint64_t lookupsRebuild      = 0;

    std::uint64_t abNodes = 0;
    double        abNodesPerSec = 0;
    std::uint64_t mctsPlayouts = 0;
    double        mctsPlayoutsPerSec = 0;

    double lookupRatio() const
    {
        return lookupsInteriorMove ? double(lookupsRebuild) / lookupsInteriorMove : 0;
    }
};

BenchReport runBench(std::shared_ptr<const mixnet::Net> net, const BenchOptions &opt);

std::string formatBench(const BenchReport &r);

}  // namespace gomoku
