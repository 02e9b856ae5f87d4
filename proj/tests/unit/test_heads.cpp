#include "../nets.h"
#include "../support.h"
#include "doctest.h"
#include "gomoku/heads.h"

#include <numeric>

using namespace gomoku;
using namespace gomoku::mixnet;

namespace {

FeatureMapView view(const std::vector<std::int32_t> &d, int h, int w, int c)
{
    return {d, h, w, c};
}

Linear fromRows(std::vector<std::vector<float>> rows)
{
    Linear l(rows[0].size(), rows.size());
    for (size_t o = 0; o < rows.size(); o++)
        for (size_t i = 0; i < rows[o].size(); i++)
            l.weight[o * l.in + i] = rows[o][i];
    return l;
}

}  // namespace

TEST_CASE("global mean matches naive summation")
{
    std::mt19937_64 rng(41);
    for (int t = 0; t < 20; t++) {
        int h = 5 + t % 11, w = 15, c = 8;
        std::vector<std::int32_t> d(h * w * c);
        for (auto &x : d)
            x = int(rng() % 2000001) - 1000000;
        auto m = globalMean(view(d, h, w, c));
        for (int k = 0; k < c; k++) {
            double s = 0;
            for (int r = 0; r < h; r++)
                for (int col = 0; col < w; col++)
                    s += d[(r * w + col) * c + k];
            CHECK(m[k] == doctest::Approx(s / (h * w) / 2048.0).epsilon(1e-7));
        }
    }
    std::vector<std::int32_t> zero(225 * 4, 0), constant(225 * 4, 2048 * 3);
    for (float x : globalMean(view(zero, 15, 15, 4)))
        CHECK(x == 0.0f);
    for (float x : globalMean(view(constant, 15, 15, 4)))
        CHECK(x == 3.0f);
}

TEST_CASE("zero policy generator yields a uniform policy over legal cells")
{
    NetConfig   cfg = NetConfig::tiny();
    HeadWeights w   = makeHeadWeights(cfg);
    std::vector<std::int32_t> d(225 * cfg.feature, 12345);
    std::vector<float>        g(cfg.feature, 0.5f);
    std::unique_ptr<bool[]>   legal(new bool[225]);
    for (int i = 0; i < 225; i++)
        legal[i] = i % 3 != 0;
    auto p  = policyForward(view(d, 15, 15, cfg.feature), g, w, {legal.get(), 225});
    auto pq = policyForward(view(d, 15, 15, cfg.feature), g, quantizeHeads(w), {legal.get(), 225});
    for (int i = 0; i < 225; i++) {
        CHECK(p[i] == doctest::Approx(legal[i] ? 1.0 / 150 : 0.0));
        CHECK(pq[i] == doctest::Approx(legal[i] ? 1.0 / 150 : 0.0));
    }
}

TEST_CASE("masked softmax: single legal cell, shift invariance, exact zeros")
{
    std::mt19937_64                 rng(42);
    std::normal_distribution<float> n(0.0f, 3.0f);
    for (int t = 0; t < 50; t++) {
        std::vector<float>      logits(100);
        std::unique_ptr<bool[]> legal(new bool[100]);
        for (int i = 0; i < 100; i++) {
            logits[i] = n(rng);
            legal[i]  = rng() % 4 != 0;
        }
        auto p = maskedSoftmax(logits, {legal.get(), 100});
        double s = 0;
        for (int i = 0; i < 100; i++) {
            s += p[i];
            if (!legal[i])
                CHECK(p[i] == 0.0f);
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-6));

        auto shifted = logits;
        for (auto &x : shifted)
            x += 17.5f;
        auto q = maskedSoftmax(shifted, {legal.get(), 100});
        CHECK(std::max_element(p.begin(), p.end()) - p.begin()
              == std::max_element(q.begin(), q.end()) - q.begin());

        std::fill_n(legal.get(), 100, false);
        legal[37] = true;
        CHECK(maskedSoftmax(logits, {legal.get(), 100})[37] == 1.0f);
    }
}

TEST_CASE("star block closed form at D = 2")
{
    StarBlock b;
    b.expandRelu   = fromRows({{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    b.expandLinear = b.expandRelu;
    b.project      = fromRows({{1, 0}, {0, 1}});
    std::mt19937_64                       rng(43);
    std::uniform_real_distribution<float> u(-2.0f, 2.0f);
    for (int t = 0; t < 100; t++) {
        float x[2] = {u(rng), u(rng)}, out[2];
        starBlock(b, x, out);
        for (int i = 0; i < 2; i++) {
            double r = std::max(x[i], 0.0f) * double(x[i]);
            CHECK(out[i] == doctest::Approx(r * r).epsilon(1e-5));
        }
    }
    float zero[2] = {0, 0}, out[2];
    starBlock(b, zero, out);
    CHECK(out[0] == 0.0f);
    CHECK(out[1] == 0.0f);
}

TEST_CASE("star block is homogeneous of degree four")
{
    std::mt19937_64                       rng(44);
    std::uniform_real_distribution<float> u(-1.0f, 1.0f);
    for (int t = 0; t < 50; t++) {
        StarBlock b {Linear(2, 4), Linear(2, 4), fromRows({{1, 0}, {0, 1}})};
        for (auto *l : {&b.expandRelu, &b.expandLinear})
            for (auto &x : l->weight)
                x = u(rng);
        float x[2] = {u(rng), u(rng)}, sx[2], a[2], c[2];
        float s    = 0.25f + 2 * std::abs(u(rng));
        sx[0] = s * x[0];
        sx[1] = s * x[1];
        starBlock(b, x, a);
        starBlock(b, sx, c);
        for (int i = 0; i < 2; i++)
            CHECK(c[i] == doctest::Approx(std::pow(s, 4) * a[i]).epsilon(1e-4).scale(1e-6));
    }
}

TEST_CASE("value chunks partition the board")
{
    for (int n = 5; n <= 32; n++) {
        auto b = chunkBounds(n);
        CHECK(b[0] == 0);
        CHECK(b[3] == n);
        for (int i = 0; i < 3; i++)
            CHECK(b[i] < b[i + 1]);
    }
    CHECK(chunkBounds(15) == std::array<int, 4> {0, 5, 10, 15});
}

TEST_CASE("uniform feature map makes every averaged group equal the chunk group")
{
    NetConfig   cfg = NetConfig::tiny();
    HeadWeights w   = randomHeadWeights(cfg, 45);
    const int   c = cfg.feature, v = cfg.value;
    std::vector<std::int32_t> d(225 * c);
    for (int i = 0; i < 225; i++)
        for (int k = 0; k < c; k++)
            d[i * c + k] = 700 * (k + 1) - 2000;
    auto g = globalMean(view(d, 15, 15, c));

    std::vector<float> g0(v), s2(v), concat(g.begin(), g.end());
    starBlock(w.valueStar1, g, g0);
    starBlock(w.valueStar2, g0, s2);
    for (int i = 0; i < 4; i++)
        concat.insert(concat.end(), s2.begin(), s2.end());
    std::vector<float> h1(v), h2(v);
    std::array<float, 3> logits;
    w.valueMlp1.forward(concat, h1);
    for (auto &x : h1)
        x = std::max(x, 0.0f);
    w.valueMlp2.forward(h1, h2);
    for (auto &x : h2)
        x = std::max(x, 0.0f);
    w.valueMlp3.forward(h2, logits);

    auto got = valueLogits(view(d, 15, 15, c), g, w);
    for (int i = 0; i < 3; i++)
        CHECK(got[i] == doctest::Approx(logits[i]).epsilon(1e-5));
}

TEST_CASE("zero value logits give a uniform triple")
{
    ValueTriple t = softmax3({0, 0, 0});
    CHECK(t.win == doctest::Approx(1.0 / 3));
    CHECK(t.loss == doctest::Approx(1.0 / 3));
    CHECK(t.draw == doctest::Approx(1.0 / 3));
}

TEST_CASE("quantized heads track the float reference on network features")
{
    auto            net = testutil::tinyNet();
    Evaluator       ev(net, 15, 15);
    std::mt19937_64 rng(46);
    float           worst = 0, worstValue = 0;
    for (int t = 0; t < 100; t++) {
        Board      b  = testutil::randomOngoing(rng, 15, 15, 1 + rng() % 80);
        Evaluation fq = ev.evaluate(b, Precision::Quantized);
        Evaluation ff = ev.evaluate(b, Precision::Float);
        worst = std::max({worst, std::abs(fq.value.win - ff.value.win),
                          std::abs(fq.value.loss - ff.value.loss),
                          std::abs(fq.value.draw - ff.value.draw)});
        worstValue = std::max({worstValue, std::abs(fq.value.win - ff.value.win),
                               std::abs(fq.value.loss - ff.value.loss)});
        double s = 0;
        for (int i = 0; i < 225; i++) {
            worst = std::max(worst, std::abs(fq.policy[i] - ff.policy[i]));
            s += fq.policy[i];
            if (b.at(b.pos(i)) != Cell::Empty)
                REQUIRE(fq.policy[i] == 0.0f);
        }
        CHECK(s == doctest::Approx(1.0).epsilon(1e-6));
        CHECK(fq.value.win + fq.value.loss + fq.value.draw == doctest::Approx(1.0).epsilon(1e-6));
    }
    MESSAGE("max divergence " << worst << " value " << worstValue);
    CHECK(worst < 0.02f);
}

TEST_CASE("color-swapped board seen from the other side evaluates identically")
{
    auto            net = testutil::tinyNet();
    Evaluator       a(net, 15, 15), b(net, 15, 15);
    std::mt19937_64 rng(47);
    for (int t = 0; t < 30; t++) {
        Board      x  = testutil::randomOngoing(rng, 15, 15, 1 + rng() % 40);
        Board      y  = x.colorSwapped();
        Evaluation ex = a.evaluate(x), ey = b.evaluate(y);
        CHECK(ex.value.win == ey.value.win);
        CHECK(ex.value.loss == ey.value.loss);
        CHECK(ex.policy == ey.policy);
    }
}
