#include "gomoku/accumulator.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gomoku::mixnet {

using pattern::HalfLength;
using pattern::Pow3;

constexpr int MaxChannels = 1024;

DepthwiseKernel DepthwiseKernel::quantize(std::span<const float> w, int channels)
{
    if (static_cast<int>(w.size()) != channels * 9)
        throw EngineError(EngineError::Code::ConfigMismatch, "depth-wise kernel size mismatch");
    DepthwiseKernel k;
    k.channels = channels;
    k.byTap.resize(9 * channels);
    for (int c = 0; c < channels; c++)
        for (int tap = 0; tap < 9; tap++) {
            float v = std::clamp(w[c * 9 + tap], -DepthwiseClamp, DepthwiseClamp);
            k.byTap[tap * channels + c] = static_cast<std::int16_t>(std::lround(v * DepthwiseScale));
        }
    return k;
}

Accumulator::Accumulator(const Codebook &codebook,
                         const DepthwiseKernel &kernel,
                         int height,
                         int width)
    : codebook_(codebook)
    , kernel_(kernel)
    , height_(height)
    , width_(width)
    , channels_(codebook.channels())
    , half_(codebook.channels() / 2)
{
    if (kernel.channels * 2 != channels_ || channels_ > MaxChannels)
        throw EngineError(EngineError::Code::ConfigMismatch,
                          "depth-wise kernel channels do not match codebook");
    if (codebook.hv.size() != size_t(pattern::PatternCount) * channels_
        || codebook.di.size() != codebook.hv.size())
        throw EngineError(EngineError::Code::ConfigMismatch, "codebook is not baked");

    const int cells = height * width;
    leftExt_.resize(cells * 4);
    for (int i = 0; i < cells; i++)
        for (int dir = 0; dir < 4; dir++)
            leftExt_[i * 4 + dir] = static_cast<std::uint8_t>(
                pattern::leftExtent(height, width, {i / width, i % width}, dir));

    for (Side &s : sides_) {
        s.ids.resize(cells * 4);
        s.dirFeat.resize(size_t(cells) * 4 * channels_);
        s.dirSum.resize(size_t(cells) * channels_);
        s.fprime.resize(size_t(cells) * channels_);
    }
}

void Accumulator::rebuildPatterns(const Board &board, int perspective, int cell)
{
    Side     &s    = sides_[perspective];
    Color     self = perspective == 0 ? Color::Black : Color::White;
    Pos       p    = board.pos(cell);
    int16_t  *sum  = s.dirSum.data() + size_t(cell) * channels_;
    std::fill_n(sum, channels_, 0);
    for (int dir = 0; dir < 4; dir++) {
        std::uint32_t id     = pattern::index(pattern::extract(board, p, dir, self));
        s.ids[cell * 4 + dir] = id;
        auto     feat = codebook_.feature(pattern::groupOf(dir), id);
        int16_t *df   = s.dirFeat.data() + (size_t(cell) * 4 + dir) * channels_;
        for (int k = 0; k < channels_; k++) {
            df[k] = feat[k];
            sum[k] += feat[k];
        }
    }
    if (checkOverflow_)
        for (int k = 0; k < channels_; k++)
            if (sum[k] > 4 * 512 || sum[k] < -4 * 512)
                overflow_.aggregation++;
}

void Accumulator::rebuildFprime(int perspective, int cell)
{
    Side               &s  = sides_[perspective];
    const int           r  = cell / width_, c = cell % width_;
    std::int32_t       *fp = s.fprime.data() + size_t(cell) * channels_;
    std::fill_n(fp, channels_, 0);

    // F'(t) = sum over taps of F(t + (dr, dc)) * W[dr+1][dc+1]
    for (int dr = -1; dr <= 1; dr++)
        for (int dc = -1; dc <= 1; dc++) {
            int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= height_ || cc < 0 || cc >= width_)
                continue;
            const int16_t *src = s.dirSum.data() + size_t(rr * width_ + cc) * channels_;
            const int16_t *w   = kernel_.byTap.data() + ((dr + 1) * 3 + (dc + 1)) * half_;
            for (int k = 0; k < half_; k++)
                fp[k] += std::int32_t(std::max<int16_t>(src[k], 0)) * w[k];
        }
    const int16_t *own = s.dirSum.data() + size_t(cell) * channels_;
    for (int k = half_; k < channels_; k++)
        fp[k] = std::int32_t(std::max<int16_t>(own[k], 0)) * DepthwiseScale;
}

void Accumulator::refresh(const Board &board)
{
    const int cells = height_ * width_;
    for (int p = 0; p < 2; p++) {
        for (int i = 0; i < cells; i++)
            rebuildPatterns(board, p, i);
        for (int i = 0; i < cells; i++)
            rebuildFprime(p, i);
    }
    lookups_ += 2ull * 4 * cells;
    changes_.clear();
    arena_.clear();
    frames_.clear();
}

void Accumulator::refreshParallel(const Board &board)
{
    const int cells = height_ * width_;
#pragma omp parallel
    {
#pragma omp for collapse(2)
        for (int p = 0; p < 2; p++)
            for (int i = 0; i < cells; i++)
                rebuildPatterns(board, p, i);
#pragma omp for collapse(2)
        for (int p = 0; p < 2; p++)
            for (int i = 0; i < cells; i++)
                rebuildFprime(p, i);
    }
    lookups_ += 2ull * 4 * cells;
    changes_.clear();
    arena_.clear();
    frames_.clear();
}

void Accumulator::depthwiseDelta(int perspective, int cell, std::span<const std::int16_t> dF)
{
    Side     &s = sides_[perspective];
    const int r = cell / width_, c = cell % width_;

    // A change of F at `cell` feeds F'(cell - (dr, dc)) through tap (dr, dc).
    for (int dr = -1; dr <= 1; dr++)
        for (int dc = -1; dc <= 1; dc++) {
            int tr = r - dr, tc = c - dc;
            if (tr < 0 || tr >= height_ || tc < 0 || tc >= width_)
                continue;
            std::int32_t  *fp = s.fprime.data() + size_t(tr * width_ + tc) * channels_;
            const int16_t *w  = kernel_.byTap.data() + ((dr + 1) * 3 + (dc + 1)) * half_;
            if (checkOverflow_) {
                for (int k = 0; k < half_; k++) {
                    std::int64_t v = std::int64_t(fp[k]) + std::int64_t(dF[k]) * w[k];
                    if (v > std::numeric_limits<std::int32_t>::max()
                        || v < std::numeric_limits<std::int32_t>::min())
                        overflow_.conv++;
                    fp[k] = static_cast<std::int32_t>(v);
                }
            }
            else {
                for (int k = 0; k < half_; k++)
                    fp[k] += std::int32_t(dF[k]) * w[k];
            }
        }

    std::int32_t *fp = s.fprime.data() + size_t(cell) * channels_;
    for (int k = half_; k < channels_; k++)
        fp[k] += std::int32_t(dF[k]) * DepthwiseScale;
}

void Accumulator::changeFeature(int perspective,
                                int cell,
                                int dir,
                                std::span<const std::int16_t> from,
                                std::span<const std::int16_t> to)
{
    Side         &s   = sides_[perspective];
    int16_t      *sum = s.dirSum.data() + size_t(cell) * channels_;
    int16_t      *df  = s.dirFeat.data() + (size_t(cell) * 4 + dir) * channels_;
    std::int16_t  dF[MaxChannels];

    for (int k = 0; k < channels_; k++) {
        int oldSum = sum[k];
        int newSum = oldSum - from[k] + to[k];
        if (checkOverflow_ && (newSum > 4 * 512 || newSum < -4 * 512))
            overflow_.aggregation++;
        sum[k] = static_cast<int16_t>(newSum);
        df[k]  = to[k];
        dF[k]  = static_cast<int16_t>(std::max(newSum, 0) - std::max(oldSum, 0));
    }
    depthwiseDelta(perspective, cell, {dF, size_t(channels_)});
}

void Accumulator::applyMove(Pos p, Color c)
{
    frames_.push_back({changes_.size(), p, c});

    for (int persp = 0; persp < 2; persp++) {
        Side        &s     = sides_[persp];
        Color        self  = persp == 0 ? Color::Black : Color::White;
        std::uint32_t digit = c == self ? 1 : 2;

        for (int dir = 0; dir < 4; dir++) {
            Pos d = Directions[dir];
            for (int j = -HalfLength; j <= HalfLength; j++) {
                int r = p.row + j * d.row, col = p.col + j * d.col;
                if (r < 0 || r >= height_ || col < 0 || col >= width_)
                    continue;
                // The stone sits at offset -j in the window centered on (r, col).
                int           cell  = r * width_ + col;
                std::uint32_t oldId = s.ids[cell * 4 + dir];
                std::uint32_t newId = oldId + digit * Pow3[leftExt_[cell * 4 + dir] - j];
                s.ids[cell * 4 + dir] = newId;

                auto oldFeat = std::span<const int16_t>(
                    s.dirFeat.data() + (size_t(cell) * 4 + dir) * channels_, channels_);
                auto newFeat = codebook_.feature(pattern::groupOf(dir), newId);
                lookups_++;

                changes_.push_back({static_cast<std::uint16_t>(cell),
                                    static_cast<std::uint8_t>(dir),
                                    static_cast<std::uint8_t>(persp),
                                    oldId,
                                    newId});
                arena_.insert(arena_.end(), oldFeat.begin(), oldFeat.end());
                arena_.insert(arena_.end(), newFeat.begin(), newFeat.end());

                size_t at = arena_.size() - 2 * channels_;
                changeFeature(persp,
                              cell,
                              dir,
                              {arena_.data() + at, size_t(channels_)},
                              {arena_.data() + at + channels_, size_t(channels_)});
            }
        }
    }
}

void Accumulator::undoMove()
{
    if (frames_.empty())
        throw EngineError(EngineError::Code::EmptyJournal, "accumulator journal is empty");
    const Frame f = frames_.back();
    frames_.pop_back();

    for (size_t i = changes_.size(); i-- > f.begin;) {
        const FeatureChange &ch  = changes_[i];
        const int16_t       *old = arena_.data() + i * 2 * channels_;
        const int16_t       *nw  = old + channels_;
        sides_[ch.perspective].ids[ch.cell * 4 + ch.dir] = ch.oldId;
        changeFeature(ch.perspective,
                      ch.cell,
                      ch.dir,
                      {nw, size_t(channels_)},
                      {old, size_t(channels_)});
    }
    changes_.resize(f.begin);
    arena_.resize(f.begin * 2 * channels_);
}

DeltaRecord Accumulator::lastDelta() const
{
    if (frames_.empty())
        return {};
    const Frame &f = frames_.back();
    return {f.move,
            f.color,
            std::span<const FeatureChange>(changes_).subspan(f.begin),
            std::span<const int16_t>(arena_).subspan(f.begin * 2 * channels_)};
}

FeatureMapView Accumulator::featureMap(Color perspective) const
{
    return {sides_[colorIndex(perspective)].fprime, height_, width_, channels_};
}

std::vector<std::int32_t> Accumulator::snapshot(Color perspective) const
{
    return sides_[colorIndex(perspective)].fprime;
}

std::span<const std::int16_t> Accumulator::dirSum(Color perspective) const
{
    return sides_[colorIndex(perspective)].dirSum;
}

}  // namespace gomoku::mixnet
