#pragma once

#include "mapping.h"

#include <cstdint>
#include <span>
#include <vector>

namespace gomoku::mixnet {

/// Pattern-indexed feature tables (horizontal/vertical and diagonal), each
/// PatternCount x C quantized features.
struct Codebook
{
    NetConfig                 config;
    std::vector<std::int16_t> hv;
    std::vector<std::int16_t> di;

    int channels() const { return static_cast<int>(config.feature); }

    std::span<const std::int16_t> feature(pattern::Group g, std::uint32_t id) const
    {
        const auto &t = g == pattern::Group::HV ? hv : di;
        return {t.data() + static_cast<size_t>(id) * config.feature, config.feature};
    }

    bool operator==(const Codebook &) const = default;
};

/// Bake every pattern of both groups through the mapping network (OpenMP
/// over pattern ids). Throws EngineError(NonFiniteWeight) on NaN/Inf weights.
Codebook bakeCodebook(const MappingWeights &w, const NetConfig &cfg);

/// Single-threaded reference of bakeCodebook; produces identical tables.
Codebook bakeCodebookSerial(const MappingWeights &w, const NetConfig &cfg);

}  // namespace gomoku::mixnet
