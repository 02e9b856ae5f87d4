#pragma once

#include "netconfig.h"
#include "pattern.h"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gomoku::mixnet {

/// One-dimensional convolution along a line: 3 taps (offsets -1, 0, +1).
/// Weight layout is [tap][in][out].
struct DirConvLayer
{
    int                in  = 0;
    int                out = 0;
    std::vector<float> weight;
    std::vector<float> bias;

    DirConvLayer() = default;
    DirConvLayer(int in, int out) : in(in), out(out), weight(3 * in * out), bias(out) {}

    float &at(int tap, int i, int o) { return weight[(tap * in + i) * out + o]; }
    float  at(int tap, int i, int o) const { return weight[(tap * in + i) * out + o]; }
};

/// 1x1 convolution, weight layout [in][out].
struct PointwiseLayer
{
    int                in  = 0;
    int                out = 0;
    std::vector<float> weight;
    std::vector<float> bias;

    PointwiseLayer() = default;
    PointwiseLayer(int in, int out) : in(in), out(out), weight(in * out), bias(out) {}

    float &at(int i, int o) { return weight[i * out + o]; }
    float  at(int i, int o) const { return weight[i * out + o]; }
};

constexpr int DirConvCount = 5;

/// Mapping network of one pattern group:
///   x1 = ReLU(pw1(ReLU(dc1(input))))            2 -> M
///   xk = x(k-1) + ReLU(pwk(ReLU(dck(x(k-1)))))  k = 2..4
///   out = head(ReLU(dc5(x4)))                   M -> C, no activation
struct MappingBranch
{
    std::array<DirConvLayer, DirConvCount>       dirConv;
    std::array<PointwiseLayer, DirConvCount - 1> pointwise;
    PointwiseLayer                               head;
};

struct MappingWeights
{
    std::array<MappingBranch, 2> groups;

    static MappingWeights zeros(const NetConfig &cfg);
    /// He-uniform kernels and small uniform biases from a seeded PRNG.
    static MappingWeights random(const NetConfig &cfg, std::uint64_t seed);

    const MappingBranch &branch(pattern::Group g) const { return groups[static_cast<int>(g)]; }
    bool                 allFinite() const;
};

/// Runs a mapping branch over a single line pattern with reusable scratch.
/// Only positions inside the shrinking receptive field of the center are
/// computed; the center output equals a full zero-padded convolution.
class MappingForward
{
public:
    explicit MappingForward(const MappingBranch &branch);

    void run(const pattern::LinePattern &p, std::span<float> out);

private:
    const MappingBranch &branch_;
    int                  m_;
    std::vector<float>   x_, h_, t_;
};

std::vector<float> mappingForward(const pattern::LinePattern &p,
                                  pattern::Group              g,
                                  const MappingWeights       &w);

constexpr float FeatureClamp = 16.0f;
constexpr int   FeatureScale = 32;

/// round-half-away-from-zero(clamp(x, -16, 16) * 32)
std::int16_t quantizeFeature(float x);
void         quantizeFeature(std::span<const float> x, std::span<std::int16_t> out);

}  // namespace gomoku::mixnet
