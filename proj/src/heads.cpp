#include "gomoku/heads.h"

#include "gomoku/types.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <type_traits>

namespace gomoku::mixnet {

namespace {

constexpr bool isQuant(const QuantLinear *)
{
    return true;
}
constexpr bool isQuant(const Linear *)
{
    return false;
}

void reluInPlace(std::span<float> x)
{
    for (float &v : x)
        v = std::max(v, 0.0f);
}

std::vector<float> chunkMean(const FeatureMapView &f, int r0, int r1, int c0, int c1)
{
    std::vector<std::int64_t> sum(f.channels, 0);
    for (int r = r0; r < r1; r++)
        for (int c = c0; c < c1; c++) {
            const std::int32_t *v = f.cell(r * f.width + c);
            for (int k = 0; k < f.channels; k++)
                sum[k] += v[k];
        }
    std::vector<float> mean(f.channels);
    double             denom = double(std::max(1, (r1 - r0) * (c1 - c0))) * FeatureMapScale;
    for (int k = 0; k < f.channels; k++)
        mean[k] = static_cast<float>(sum[k] / denom);
    return mean;
}

}  // namespace

void Linear::forward(std::span<const float> x, std::span<float> y) const
{
    for (int o = 0; o < out; o++) {
        const float *w   = weight.data() + o * in;
        float        acc = bias[o];
        for (int i = 0; i < in; i++)
            acc += w[i] * x[i];
        y[o] = acc;
    }
}

QuantLinear QuantLinear::from(const Linear &l)
{
    QuantLinear q;
    q.in   = l.in;
    q.out  = l.out;
    q.bias = l.bias;
    float maxAbs = 0.0f;
    for (float v : l.weight)
        maxAbs = std::max(maxAbs, std::abs(v));
    q.scale = maxAbs > 0.0f ? 127.0f / maxAbs : 1.0f;
    q.weight.resize(l.weight.size());
    for (size_t i = 0; i < l.weight.size(); i++)
        q.weight[i] = static_cast<std::int8_t>(
            std::clamp<long>(std::lround(l.weight[i] * q.scale), -127, 127));
    return q;
}

void QuantLinear::forward(std::span<const float> x, std::span<float> y) const
{
    float maxAbs = 0.0f;
    for (int i = 0; i < in; i++)
        maxAbs = std::max(maxAbs, std::abs(x[i]));
    const float xScale = maxAbs > 0.0f ? 127.0f / maxAbs : 1.0f;

    std::int8_t xq[1024];
    for (int i = 0; i < in; i++)
        xq[i] = static_cast<std::int8_t>(std::clamp<long>(std::lround(x[i] * xScale), -127, 127));

    const float deq = 1.0f / (scale * xScale);
    for (int o = 0; o < out; o++) {
        const std::int8_t *w   = weight.data() + o * in;
        std::int32_t       acc = 0;
        for (int i = 0; i < in; i++)
            acc += std::int32_t(w[i]) * std::int32_t(xq[i]);
        y[o] = acc * deq + bias[o];
    }
}

template <typename L>
void starBlock(const StarBlockT<L> &b, std::span<const float> x, std::span<float> out)
{
    const int          d = b.outDim();
    std::vector<float> a(2 * d), lin(2 * d), prod(d);
    b.expandRelu.forward(x, a);
    reluInPlace(a);
    b.expandLinear.forward(x, lin);
    for (int i = 0; i < d; i++)
        prod[i] = (a[2 * i] * lin[2 * i]) * (a[2 * i + 1] * lin[2 * i + 1]);
    b.project.forward(prod, out);
    reluInPlace(out.first(d));
}

namespace {

StarBlock makeStar(int in, int out)
{
    return {Linear(in, 2 * out), Linear(in, 2 * out), Linear(out, out)};
}

template <typename Fn>
void forEachLinear(HeadWeights &h, Fn &&fn)
{
    fn(h.policyGen1);
    fn(h.policyGen2);
    for (StarBlock *s : {&h.valueStar1, &h.valueStar2}) {
        fn(s->expandRelu);
        fn(s->expandLinear);
        fn(s->project);
    }
    fn(h.valueMlp1);
    fn(h.valueMlp2);
    fn(h.valueMlp3);
}

QuantStarBlock quantizeStar(const StarBlock &s)
{
    return {QuantLinear::from(s.expandRelu),
            QuantLinear::from(s.expandLinear),
            QuantLinear::from(s.project)};
}

}  // namespace

HeadWeights makeHeadWeights(const NetConfig &cfg)
{
    cfg.validate();
    const int   c = cfg.feature, p = cfg.policy, v = cfg.value;
    HeadWeights h;
    h.policyGen1 = Linear(c, c);
    h.policyGen2 = Linear(c, PolicyDynOut * p + PolicyDynOut);
    h.valueStar1 = makeStar(c, v);
    h.valueStar2 = makeStar(v, v);
    h.valueMlp1  = Linear(c + 4 * v, v);
    h.valueMlp2  = Linear(v, v);
    h.valueMlp3  = Linear(v, 3);
    return h;
}

HeadWeights randomHeadWeights(const NetConfig &cfg, std::uint64_t seed)
{
    HeadWeights     h = makeHeadWeights(cfg);
    std::mt19937_64 prng {seed};
    forEachLinear(h, [&](Linear &l) {
        float                                 bound = 1.0f / std::sqrt(float(l.in));
        std::uniform_real_distribution<float> u(-bound, bound);
        for (auto &x : l.weight)
            x = u(prng);
        for (auto &x : l.bias)
            x = u(prng);
    });
    std::normal_distribution<float> star(0.0f, 0.02f);
    for (StarBlock *s : {&h.valueStar1, &h.valueStar2})
        for (Linear *l : {&s->expandRelu, &s->expandLinear, &s->project}) {
            for (auto &x : l->weight)
                do
                    x = star(prng);
                while (std::abs(x) > 0.04f);
            std::fill(l->bias.begin(), l->bias.end(), 0.0f);
        }
    std::uniform_real_distribution<float> pw(-0.25f, 0.25f);
    for (auto &x : h.policyOut)
        x = pw(prng);
    h.policyOutBias = pw(prng);
    return h;
}

QuantHeads quantizeHeads(const HeadWeights &h)
{
    QuantHeads q;
    q.policyGen1    = QuantLinear::from(h.policyGen1);
    q.policyGen2    = QuantLinear::from(h.policyGen2);
    q.policyOut     = h.policyOut;
    q.policyOutBias = h.policyOutBias;
    q.valueStar1    = quantizeStar(h.valueStar1);
    q.valueStar2    = quantizeStar(h.valueStar2);
    q.valueMlp1     = QuantLinear::from(h.valueMlp1);
    q.valueMlp2     = QuantLinear::from(h.valueMlp2);
    q.valueMlp3     = QuantLinear::from(h.valueMlp3);
    return q;
}

bool allFinite(const HeadWeights &h)
{
    bool ok = true;
    forEachLinear(const_cast<HeadWeights &>(h), [&](Linear &l) {
        for (float x : l.weight)
            ok = ok && std::isfinite(x);
        for (float x : l.bias)
            ok = ok && std::isfinite(x);
    });
    for (float x : h.policyOut)
        ok = ok && std::isfinite(x);
    return ok && std::isfinite(h.policyOutBias);
}

std::vector<float> globalMean(const FeatureMapView &f)
{
    return chunkMean(f, 0, f.height, 0, f.width);
}

std::array<int, 4> chunkBounds(int n)
{
    return {0, n / 3, 2 * n / 3, n};
}

template <typename L>
std::vector<float> policyLogits(const FeatureMapView &f, std::span<const float> g, const HeadsT<L> &w)
{
    const int p = (w.policyGen2.out - PolicyDynOut) / PolicyDynOut;

    std::vector<float> hidden(w.policyGen1.out), dyn(w.policyGen2.out);
    w.policyGen1.forward(g, hidden);
    reluInPlace(hidden);
    w.policyGen2.forward(hidden, dyn);
    const float *dynW = dyn.data();                       // [16][P]
    const float *dynB = dyn.data() + PolicyDynOut * p;    // [16]

    const int          cells = f.height * f.width;
    std::vector<float> logits(cells);

    if constexpr (isQuant(static_cast<const L *>(nullptr))) {
        // int16 dynamic convolution. Inputs are F' shifted right just enough
        // to fit 14 bits, weights scaled so that max |w| = 1024; with P <= 64
        // every sum stays inside int32.
        float maxAbs = 0.0f;
        for (int i = 0; i < PolicyDynOut * p; i++)
            maxAbs = std::max(maxAbs, std::abs(dynW[i]));
        const float wScale = maxAbs > 0.0f ? 1024.0f / maxAbs : 1.0f;

        std::int64_t maxIn = 0;
        for (int idx = 0; idx < cells; idx++)
            for (int k = 0; k < p; k++)
                maxIn = std::max<std::int64_t>(maxIn, std::abs(std::int64_t(f.cell(idx)[k])));
        int shift = 0;
        while (((maxIn + (shift ? 1 << (shift - 1) : 0)) >> shift) > 16383)
            shift++;
        const float inScale = float(FeatureMapScale) / float(1 << shift);

        std::int16_t wq[PolicyDynOut * 64];
        std::int32_t bq[PolicyDynOut];
        for (int i = 0; i < PolicyDynOut * p; i++)
            wq[i] = static_cast<std::int16_t>(std::lround(dynW[i] * wScale));
        for (int o = 0; o < PolicyDynOut; o++)
            bq[o] = static_cast<std::int32_t>(
                std::clamp(std::llround(double(dynB[o]) * inScale * wScale), -(1LL << 30), 1LL << 30));
        const float deq  = 1.0f / (inScale * wScale);
        const int   half = shift ? 1 << (shift - 1) : 0;

        std::int16_t xq[64];
        for (int idx = 0; idx < cells; idx++) {
            const std::int32_t *x = f.cell(idx);
            for (int k = 0; k < p; k++) {
                // rounding half away from zero
                std::int32_t v = x[k] >= 0 ? (x[k] + half) >> shift : -((-x[k] + half) >> shift);
                xq[k]          = static_cast<std::int16_t>(v);
            }
            float raw = w.policyOutBias;
            for (int o = 0; o < PolicyDynOut; o++) {
                std::int32_t acc = bq[o];
                for (int k = 0; k < p; k++)
                    acc += std::int32_t(wq[o * p + k]) * std::int32_t(xq[k]);
                raw += w.policyOut[o] * (std::max(acc, 0) * deq);
            }
            logits[idx] = raw;
        }
    }
    else {
        for (int idx = 0; idx < cells; idx++) {
            const std::int32_t *x   = f.cell(idx);
            float               raw = w.policyOutBias;
            for (int o = 0; o < PolicyDynOut; o++) {
                float acc = dynB[o];
                for (int k = 0; k < p; k++)
                    acc += dynW[o * p + k] * (float(x[k]) / FeatureMapScale);
                raw += w.policyOut[o] * std::max(acc, 0.0f);
            }
            logits[idx] = raw;
        }
    }
    return logits;
}

std::vector<float> maskedSoftmax(std::span<const float> logits, std::span<const bool> legal)
{
    std::vector<float> prob(logits.size(), 0.0f);
    float              maxLogit = -INFINITY;
    for (size_t i = 0; i < logits.size(); i++)
        if (legal[i])
            maxLogit = std::max(maxLogit, logits[i]);
    if (maxLogit == -INFINITY)
        return prob;

    double sum = 0.0;
    for (size_t i = 0; i < logits.size(); i++)
        if (legal[i])
            sum += std::exp(double(logits[i]) - maxLogit);
    for (size_t i = 0; i < logits.size(); i++)
        if (legal[i])
            prob[i] = static_cast<float>(std::exp(double(logits[i]) - maxLogit) / sum);
    return prob;
}

template <typename L>
std::vector<float> policyForward(const FeatureMapView &f,
                                 std::span<const float> g,
                                 const HeadsT<L>       &w,
                                 std::span<const bool>  legal)
{
    return maskedSoftmax(policyLogits(f, g, w), legal);
}

template <typename L>
std::array<float, 3> valueLogits(const FeatureMapView &f, std::span<const float> g, const HeadsT<L> &w)
{
    const int v  = w.valueStar1.outDim();
    auto      rb = chunkBounds(f.height);
    auto      cb = chunkBounds(f.width);

    std::vector<float> group[3][3];
    for (int i = 0; i < 3; i++)
        for (int j = 0; j < 3; j++) {
            auto mean   = chunkMean(f, rb[i], rb[i + 1], cb[j], cb[j + 1]);
            group[i][j] = std::vector<float>(v);
            starBlock(w.valueStar1, mean, group[i][j]);
        }

    std::vector<float> concat(g.begin(), g.end());
    std::vector<float> quad(v), star(v);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++) {
            for (int k = 0; k < v; k++)
                quad[k] = (group[i][j][k] + group[i][j + 1][k] + group[i + 1][j][k]
                           + group[i + 1][j + 1][k])
                          / 4;
            starBlock(w.valueStar2, quad, star);
            concat.insert(concat.end(), star.begin(), star.end());
        }

    std::vector<float> h1(w.valueMlp1.out), h2(w.valueMlp2.out);
    w.valueMlp1.forward(concat, h1);
    reluInPlace(h1);
    w.valueMlp2.forward(h1, h2);
    reluInPlace(h2);
    std::array<float, 3> logits {};
    w.valueMlp3.forward(h2, logits);
    return logits;
}

ValueTriple softmax3(const std::array<float, 3> &logits)
{
    double m = std::max({logits[0], logits[1], logits[2]});
    double e[3], s = 0;
    for (int i = 0; i < 3; i++)
        s += e[i] = std::exp(logits[i] - m);
    return {float(e[0] / s), float(e[1] / s), float(e[2] / s)};
}

template <typename L>
ValueTriple valueForward(const FeatureMapView &f, std::span<const float> g, const HeadsT<L> &w)
{
    return softmax3(valueLogits(f, g, w));
}

template void starBlock(const StarBlock &, std::span<const float>, std::span<float>);
template void starBlock(const QuantStarBlock &, std::span<const float>, std::span<float>);
template std::vector<float> policyLogits(const FeatureMapView &, std::span<const float>, const HeadWeights &);
template std::vector<float> policyLogits(const FeatureMapView &, std::span<const float>, const QuantHeads &);
template std::vector<float>
policyForward(const FeatureMapView &, std::span<const float>, const HeadWeights &, std::span<const bool>);
template std::vector<float>
policyForward(const FeatureMapView &, std::span<const float>, const QuantHeads &, std::span<const bool>);
template std::array<float, 3> valueLogits(const FeatureMapView &, std::span<const float>, const HeadWeights &);
template std::array<float, 3> valueLogits(const FeatureMapView &, std::span<const float>, const QuantHeads &);
template ValueTriple valueForward(const FeatureMapView &, std::span<const float>, const HeadWeights &);
template ValueTriple valueForward(const FeatureMapView &, std::span<const float>, const QuantHeads &);

}  // namespace gomoku::mixnet
