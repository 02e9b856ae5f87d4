#pragma once

#include "netconfig.h"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gomoku::mixnet {

/// Fixed-point scale of the feature map handed to the heads
/// (feature scale 32 x depth-wise weight scale 64).
constexpr int FeatureMapScale = 2048;

/// Dense layer, weight layout [out][in].
struct Linear
{
    int                in  = 0;
    int                out = 0;
    std::vector<float> weight;
    std::vector<float> bias;

    Linear() = default;
    Linear(int in, int out) : in(in), out(out), weight(in * out), bias(out) {}

    void forward(std::span<const float> x, std::span<float> y) const;
};

/// Int8 weights (symmetric per-tensor scale 127/max|w|), int8 activations
/// with a per-call symmetric scale and saturating clamp, int32 accumulation.
struct QuantLinear
{
    int                       in    = 0;
    int                       out   = 0;
    float                     scale = 1.0f;
    std::vector<std::int8_t>  weight;
    std::vector<float>        bias;

    static QuantLinear from(const Linear &l);
    void               forward(std::span<const float> x, std::span<float> y) const;
};

/// Star block: a = ReLU(A x), b = B x, c = a * b (2D channels),
/// d[i] = c[2i] * c[2i+1], out = ReLU(W d).
template <typename L>
struct StarBlockT
{
    L expandRelu;
    L expandLinear;
    L project;

    int outDim() const { return project.out; }
};

using StarBlock      = StarBlockT<Linear>;
using QuantStarBlock = StarBlockT<QuantLinear>;

template <typename L>
void starBlock(const StarBlockT<L> &b, std::span<const float> x, std::span<float> out);

template <typename L>
struct HeadsT
{
    L                                policyGen1;  // C -> C
    L                                policyGen2;  // C -> 16 * P + 16
    std::array<float, PolicyDynOut>  policyOut {};
    float                            policyOutBias = 0.0f;
    StarBlockT<L>                    valueStar1;  // C -> V
    StarBlockT<L>                    valueStar2;  // V -> V
    L                                valueMlp1;   // C + 4V -> V
    L                                valueMlp2;   // V -> V
    L                                valueMlp3;   // V -> 3
};

using HeadWeights = HeadsT<Linear>;
using QuantHeads  = HeadsT<QuantLinear>;

HeadWeights makeHeadWeights(const NetConfig &cfg);
HeadWeights randomHeadWeights(const NetConfig &cfg, std::uint64_t seed);
QuantHeads  quantizeHeads(const HeadWeights &h);
bool        allFinite(const HeadWeights &h);

struct ValueTriple
{
    float win  = 1.0f / 3;
    float loss = 1.0f / 3;
    float draw = 1.0f / 3;

    float utility() const { return win - loss; }
};

struct Evaluation
{
    ValueTriple        value;
    std::vector<float> policy;  // H x W, zero on occupied cells
};

/// Read-only view of F' for one perspective: cells x channels, row-major.
struct FeatureMapView
{
    std::span<const std::int32_t> data;
    int                           height   = 0;
    int                           width    = 0;
    int                           channels = 0;

    const std::int32_t *cell(int idx) const { return data.data() + idx * channels; }
};

/// Per-channel mean of F' in float units.
std::vector<float> globalMean(const FeatureMapView &f);

/// Row/col boundaries of the 3x3 value chunks: floor(i * n / 3).
std::array<int, 4> chunkBounds(int n);

/// Raw policy logits (no mask, no softmax).
template <typename L>
std::vector<float> policyLogits(const FeatureMapView &f,
                                std::span<const float> g,
                                const HeadsT<L>       &w);

/// Masked softmax: zero on illegal cells, sums to one over legal cells.
std::vector<float> maskedSoftmax(std::span<const float> logits, std::span<const bool> legal);

template <typename L>
std::vector<float> policyForward(const FeatureMapView &f,
                                 std::span<const float> g,
                                 const HeadsT<L>       &w,
                                 std::span<const bool>  legal);

template <typename L>
std::array<float, 3> valueLogits(const FeatureMapView &f,
                                 std::span<const float> g,
                                 const HeadsT<L>       &w);

template <typename L>
ValueTriple valueForward(const FeatureMapView &f, std::span<const float> g, const HeadsT<L> &w);

ValueTriple softmax3(const std::array<float, 3> &logits);

}  // namespace gomoku::mixnet
