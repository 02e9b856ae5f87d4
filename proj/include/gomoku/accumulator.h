#pragma once

#include "board.h"
#include "codebook.h"
#include "heads.h"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gomoku::mixnet {

constexpr int   DepthwiseScale = 64;
constexpr float DepthwiseClamp = 2.0f;

/// Depth-wise 3x3 kernel over the first C/2 feature channels, int16 at scale 64.
struct DepthwiseKernel
{
    int                       channels = 0;  // C / 2
    std::vector<std::int16_t> byTap;         // [tap = (dr+1)*3 + (dc+1)][channel]

    /// `w` is laid out [channel][3][3] in float.
    static DepthwiseKernel quantize(std::span<const float> w, int channels);

    std::int16_t at(int k, int dr, int dc) const
    {
        return byTap[((dr + 1) * 3 + (dc + 1)) * channels + k];
    }
};

/// One changed directional feature, both perspectives share the layout.
struct FeatureChange
{
    std::uint16_t cell;
    std::uint8_t  dir;
    std::uint8_t  perspective;  // 0: black is "self", 1: white is "self"
    std::uint32_t oldId;
    std::uint32_t newId;
};

/// View of the changes made by one applied move.
struct DeltaRecord
{
    Pos                               move;
    Color                             color;
    std::span<const FeatureChange>    changes;
    std::span<const std::int16_t>     features;  // per change: old[C] then new[C]
};

struct OverflowStats
{
    std::uint64_t aggregation = 0;  // |dir_sum| > 2048 or outside int16
    std::uint64_t conv        = 0;  // F' entry outside int32
};

/// Incrementally maintained directional features, aggregated map and F'
/// for both perspectives, with an exact undo journal.
class Accumulator
{
public:
    Accumulator(const Codebook &codebook, const DepthwiseKernel &kernel, int height, int width);

    /// Rebuild everything from the board and clear the journal.
    void refresh(const Board &board);
    /// Same result as refresh(), cells processed with OpenMP.
    void refreshParallel(const Board &board);

    /// Apply a stone placed at `p` (on an empty cell) and push a journal frame.
    void applyMove(Pos p, Color c);
    /// Revert the most recent applyMove. Throws EngineError(EmptyJournal).
    void undoMove();

    int         journalDepth() const { return static_cast<int>(frames_.size()); }
    DeltaRecord lastDelta() const;

    FeatureMapView             featureMap(Color perspective) const;
    std::vector<std::int32_t>  snapshot(Color perspective) const;
    std::span<const std::int16_t> dirSum(Color perspective) const;

    /// F'[cell][k] += contribution of an F change dF at `cell`.
    void depthwiseDelta(int perspective, int cell, std::span<const std::int16_t> dF);

    std::uint64_t lookups() const { return lookups_; }
    void          resetLookups() { lookups_ = 0; }

    void                 setOverflowChecks(bool on) { checkOverflow_ = on; }
    const OverflowStats &overflow() const { return overflow_; }

    int height() const { return height_; }
    int width() const { return width_; }
    int channels() const { return channels_; }

private:
    struct Frame
    {
        std::size_t begin;
        Pos         move;
        Color       color;
    };

    struct Side
    {
        std::vector<std::uint32_t> ids;      // [cell][dir]
        std::vector<std::int16_t>  dirFeat;  // [cell][dir][C]
        std::vector<std::int16_t>  dirSum;   // [cell][C]
        std::vector<std::int32_t>  fprime;   // [cell][C]
    };

    void rebuildPatterns(const Board &board, int perspective, int cell);
    void rebuildFprime(int perspective, int cell);
    void changeFeature(int perspective, int cell, int dir, std::span<const std::int16_t> from,
                       std::span<const std::int16_t> to);

    const Codebook        &codebook_;
    const DepthwiseKernel &kernel_;
    int                    height_;
    int                    width_;
    int                    channels_;
    int                    half_;
    std::vector<std::uint8_t> leftExt_;  // [cell][dir]
    std::array<Side, 2>       sides_;

    std::vector<FeatureChange> changes_;
    std::vector<std::int16_t>  arena_;
    std::vector<Frame>         frames_;

    std::uint64_t lookups_       = 0;
    bool          checkOverflow_ = false;
    OverflowStats overflow_;
};

}  // namespace gomoku::mixnet
