#include "gomoku/mapping.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace gomoku::mixnet {

using pattern::HalfLength;
using pattern::LinePattern;
using pattern::MaxLength;

namespace {

template <typename Fn>
void forEachTensor(MappingWeights &w, Fn &&fn)
{
    for (auto &b : w.groups) {
        for (auto &l : b.dirConv) {
            fn(l.weight, 3 * l.in);
            fn(l.bias, 0);
        }
        for (auto &l : b.pointwise) {
            fn(l.weight, l.in);
            fn(l.bias, 0);
        }
        fn(b.head.weight, b.head.in);
        fn(b.head.bias, 0);
    }
}

void relu(float *x, int n)
{
    for (int i = 0; i < n; i++)
        x[i] = std::max(x[i], 0.0f);
}

// out[p] = bias + sum_t sum_i in[p + t - 1][i] * w[t][i], for p in [lo, hi].
void dirConv(const DirConvLayer &l, const float *in, float *out, int n, int lo, int hi)
{
    for (int p = lo; p <= hi; p++) {
        float *o = out + p * l.out;
        std::copy(l.bias.begin(), l.bias.end(), o);
        for (int t = 0; t < 3; t++) {
            int q = p + t - 1;
            if (q < 0 || q >= n)
                continue;
            const float *x = in + q * l.in;
            for (int i = 0; i < l.in; i++) {
                float xi = x[i];
                if (xi == 0.0f)
                    continue;
                const float *w = l.weight.data() + (t * l.in + i) * l.out;
                for (int j = 0; j < l.out; j++)
                    o[j] += xi * w[j];
            }
        }
    }
}

void pointwise(const PointwiseLayer &l, const float *in, float *out)
{
    std::copy(l.bias.begin(), l.bias.end(), out);
    for (int i = 0; i < l.in; i++) {
        float xi = in[i];
        if (xi == 0.0f)
            continue;
        const float *w = l.weight.data() + i * l.out;
        for (int j = 0; j < l.out; j++)
            out[j] += xi * w[j];
    }
}

MappingBranch makeBranch(const NetConfig &cfg)
{
    int           m = cfg.mapping, c = cfg.feature;
    MappingBranch b;
    b.dirConv[0] = DirConvLayer(2, m);
    for (int k = 1; k < DirConvCount; k++)
        b.dirConv[k] = DirConvLayer(m, m);
    for (auto &p : b.pointwise)
        p = PointwiseLayer(m, m);
    b.head = PointwiseLayer(m, c);
    return b;
}

}  // namespace

MappingWeights MappingWeights::zeros(const NetConfig &cfg)
{
    cfg.validate();
    MappingWeights w;
    w.groups[0] = makeBranch(cfg);
    w.groups[1] = makeBranch(cfg);
    return w;
}

MappingWeights MappingWeights::random(const NetConfig &cfg, std::uint64_t seed)
{
    MappingWeights  w = zeros(cfg);
    std::mt19937_64 prng {seed};
    forEachTensor(w, [&](std::vector<float> &t, int fanIn) {
        float limit = fanIn > 0 ? std::sqrt(6.0f / fanIn) : 0.1f;
        std::uniform_real_distribution<float> dist(-limit, limit);
        for (auto &v : t)
            v = dist(prng);
    });
    return w;
}

bool MappingWeights::allFinite() const
{
    bool ok = true;
    forEachTensor(const_cast<MappingWeights &>(*this), [&](std::vector<float> &t, int) {
        for (float v : t)
            ok = ok && std::isfinite(v);
    });
    return ok;
}

MappingForward::MappingForward(const MappingBranch &branch)
    : branch_(branch)
    , m_(branch.dirConv[0].out)
    , x_(MaxLength * m_)
    , h_(MaxLength * m_)
    , t_(m_)
{}

void MappingForward::run(const LinePattern &p, std::span<float> out)
{
    const int n      = p.length();
    const int center = p.left;
    auto      lo     = [&](int r) { return std::max(0, center - r); };
    auto      hi     = [&](int r) { return std::min(n - 1, center + r); };

    // One-hot input: channel 0 own stones, channel 1 opponent stones.
    float input[MaxLength * 2] = {};
    for (int k = 0; k < n; k++)
        if (p.cells[k] != 0)
            input[k * 2 + (p.cells[k] - 1)] = 1.0f;

    // Layer 1 (radius 4).
    int r = HalfLength - 1;
    dirConv(branch_.dirConv[0], input, h_.data(), n, lo(r), hi(r));
    for (int q = lo(r); q <= hi(r); q++) {
        relu(&h_[q * m_], m_);
        pointwise(branch_.pointwise[0], &h_[q * m_], &x_[q * m_]);
        relu(&x_[q * m_], m_);
    }

    // Residual layers 2..4 (radius 3, 2, 1).
    for (int k = 1; k < DirConvCount - 1; k++) {
        r = HalfLength - 1 - k;
        dirConv(branch_.dirConv[k], x_.data(), h_.data(), n, lo(r), hi(r));
        for (int q = lo(r); q <= hi(r); q++) {
            relu(&h_[q * m_], m_);
            pointwise(branch_.pointwise[k], &h_[q * m_], t_.data());
            for (int j = 0; j < m_; j++)
                x_[q * m_ + j] += std::max(t_[j], 0.0f);
        }
    }

    // Layer 5 at the center only, then the linear head.
    dirConv(branch_.dirConv[DirConvCount - 1], x_.data(), h_.data(), n, center, center);
    relu(&h_[center * m_], m_);
    pointwise(branch_.head, &h_[center * m_], out.data());
}

std::vector<float> mappingForward(const LinePattern &p, pattern::Group g, const MappingWeights &w)
{
    const MappingBranch &b = w.branch(g);
    std::vector<float>   out(b.head.out);
    MappingForward       f(b);
    f.run(p, out);
    return out;
}

std::int16_t quantizeFeature(float x)
{
    float c = std::clamp(x, -FeatureClamp, FeatureClamp);
    return static_cast<std::int16_t>(std::lround(c * FeatureScale));
}

void quantizeFeature(std::span<const float> x, std::span<std::int16_t> out)
{
    for (size_t i = 0; i < x.size(); i++)
        out[i] = quantizeFeature(x[i]);
}

}  // namespace gomoku::mixnet
