#include "gomoku/codebook.h"

#include "gomoku/types.h"

namespace gomoku::mixnet {

namespace {

Codebook prepare(const MappingWeights &w, const NetConfig &cfg)
{
    cfg.validate();
    if (!w.allFinite())
        throw EngineError(EngineError::Code::NonFiniteWeight, "mapping weights contain NaN/Inf");
    for (const auto &b : w.groups)
        if (b.head.out != static_cast<int>(cfg.feature)
            || b.dirConv[0].out != static_cast<int>(cfg.mapping))
            throw EngineError(EngineError::Code::ConfigMismatch,
                              "mapping weights do not match network config");
    Codebook cb;
    cb.config = cfg;
    cb.hv.resize(static_cast<size_t>(pattern::PatternCount) * cfg.feature);
    cb.di.resize(cb.hv.size());
    return cb;
}

void bakeRange(const MappingBranch &branch,
               std::vector<std::int16_t> &table,
               int channels,
               std::int64_t begin,
               std::int64_t end)
{
    MappingForward     forward(branch);
    std::vector<float> feat(channels);
    for (std::int64_t id = begin; id < end; id++) {
        forward.run(pattern::decode(static_cast<std::uint32_t>(id)), feat);
        quantizeFeature(feat, {table.data() + id * channels, static_cast<size_t>(channels)});
    }
}

}  // namespace

Codebook bakeCodebook(const MappingWeights &w, const NetConfig &cfg)
{
    Codebook           cb       = prepare(w, cfg);
    const int          channels = cfg.feature;
    const std::int64_t n        = pattern::PatternCount;
    constexpr int      Chunk    = 4096;
    const std::int64_t chunks   = (n + Chunk - 1) / Chunk;

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t job = 0; job < 2 * chunks; job++) {
        int          group = static_cast<int>(job / chunks);
        std::int64_t begin = (job % chunks) * Chunk;
        std::int64_t end   = std::min(n, begin + Chunk);
        bakeRange(w.groups[group], group == 0 ? cb.hv : cb.di, channels, begin, end);
    }
    return cb;
}

Codebook bakeCodebookSerial(const MappingWeights &w, const NetConfig &cfg)
{
    Codebook cb = prepare(w, cfg);
    bakeRange(w.groups[0], cb.hv, cfg.feature, 0, pattern::PatternCount);
    bakeRange(w.groups[1], cb.di, cfg.feature, 0, pattern::PatternCount);
    return cb;
}

}  // namespace gomoku::mixnet
