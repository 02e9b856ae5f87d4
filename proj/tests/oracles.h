#pragma once

#include "gomoku/accumulator.h"
#include "gomoku/pattern.h"

#include <cmath>
#include <random>
#include <vector>

namespace testutil {

using namespace gomoku;
using namespace gomoku::mixnet;

/// Codebook filled with random features in [-512, 512]; skips the network.
inline Codebook randomCodebook(const NetConfig &cfg, std::uint64_t seed)
{
    Codebook cb;
    cb.config = cfg;
    cb.hv.resize(size_t(pattern::PatternCount) * cfg.feature);
    cb.di.resize(cb.hv.size());
    std::mt19937_64 rng(seed);
    for (auto *t : {&cb.hv, &cb.di})
        for (auto &v : *t)
            v = static_cast<std::int16_t>(int(rng() % 1025) - 512);
    return cb;
}

/// Float kernel [C/2][3][3] in [-2.5, 2.5] (exercises the clamp).
inline std::vector<float> randomDepthwise(int half, std::uint64_t seed)
{
    std::mt19937_64                       rng(seed);
    std::uniform_real_distribution<float> d(-2.5f, 2.5f);
    std::vector<float>                    w(half * 9);
    for (auto &x : w)
        x = d(rng);
    return w;
}

/// F' recomputed from scratch: pattern extraction, codebook lookups,
/// ReLU of the directional sum, and a direct 3x3 depth-wise convolution.
inline std::vector<std::int32_t> denseFprime(const Board &b,
                                             Color self,
                                             const Codebook &cb,
                                             const std::vector<float> &depthwise)
{
    const int h = b.height(), w = b.width(), C = cb.channels(), half = C / 2;
    std::vector<std::int64_t> F(size_t(h) * w * C, 0);
    for (int r = 0; r < h; r++)
        for (int c = 0; c < w; c++)
            for (int dir = 0; dir < 4; dir++) {
                auto feat = cb.feature(pattern::groupOf(dir),
                                       pattern::index(pattern::extract(b, {r, c}, dir, self)));
                for (int k = 0; k < C; k++)
                    F[(r * w + c) * C + k] += feat[k];
            }
    for (auto &x : F)
        x = std::max<std::int64_t>(x, 0);

    std::vector<std::int32_t> out(size_t(h) * w * C, 0);
    for (int r = 0; r < h; r++)
        for (int c = 0; c < w; c++)
            for (int k = 0; k < C; k++) {
                std::int64_t acc = 0;
                if (k < half) {
                    for (int i = 0; i < 3; i++)
                        for (int j = 0; j < 3; j++) {
                            int rr = r + i - 1, cc = c + j - 1;
                            if (rr < 0 || rr >= h || cc < 0 || cc >= w)
                                continue;
                            float wf = std::fmax(-2.0f, std::fmin(2.0f, depthwise[k * 9 + i * 3 + j]));
                            acc += F[(rr * w + cc) * C + k] * std::lround(wf * 64);
                        }
                }
                else
                    acc = F[(r * w + c) * C + k] * 64;
                out[(r * w + c) * C + k] = static_cast<std::int32_t>(acc);
            }
    return out;
}

}  // namespace testutil
