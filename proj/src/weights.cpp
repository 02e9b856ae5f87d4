#include "gomoku/weights.h"

#include "gomoku/types.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace gomoku::mixnet {

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

namespace {

using Shape = std::vector<std::uint32_t>;

template <typename Fn>
void visitTensors(NetWeights &w, Fn &&fn)
{
    const std::uint32_t m = w.config.mapping, c = w.config.feature, p = w.config.policy,
                        v = w.config.value;
    for (int g = 0; g < 2; g++) {
        std::string    prefix = g == 0 ? "mapping.hv." : "mapping.di.";
        MappingBranch &b      = w.mapping.groups[g];
        for (int k = 0; k < DirConvCount; k++) {
            std::string   n = prefix + "dirconv" + std::to_string(k + 1);
            std::uint32_t in = k == 0 ? 2 : m;
            fn(n + ".weight", Shape {3, in, m}, b.dirConv[k].weight);
            fn(n + ".bias", Shape {m}, b.dirConv[k].bias);
            if (k < DirConvCount - 1) {
                std::string pn = prefix + "pointwise" + std::to_string(k + 1);
                fn(pn + ".weight", Shape {m, m}, b.pointwise[k].weight);
                fn(pn + ".bias", Shape {m}, b.pointwise[k].bias);
            }
        }
        fn(prefix + "head.weight", Shape {m, c}, b.head.weight);
        fn(prefix + "head.bias", Shape {c}, b.head.bias);
    }
    fn("depthwise.weight", Shape {c / 2, 3, 3}, w.depthwise);

    auto linear = [&](const std::string &n, Linear &l) {
        fn(n + ".weight", Shape {std::uint32_t(l.out), std::uint32_t(l.in)}, l.weight);
        fn(n + ".bias", Shape {std::uint32_t(l.out)}, l.bias);
    };
    HeadWeights &h = w.heads;
    linear("policy.gen1", h.policyGen1);
    linear("policy.gen2", h.policyGen2);
    fn("policy.out.weight", Shape {PolicyDynOut}, std::span<float>(h.policyOut));
    fn("policy.out.bias", Shape {1}, std::span<float>(&h.policyOutBias, 1));
    for (auto [n, s] : {std::pair {"value.star1", &h.valueStar1}, {"value.star2", &h.valueStar2}}) {
        linear(std::string(n) + ".expand_relu", s->expandRelu);
        linear(std::string(n) + ".expand_linear", s->expandLinear);
        linear(std::string(n) + ".project", s->project);
    }
    linear("value.mlp1", h.valueMlp1);
    linear("value.mlp2", h.valueMlp2);
    linear("value.mlp3", h.valueMlp3);
    (void)p;
    (void)v;
}

template <typename T>
void put(std::ostream &out, T v)
{
    out.write(reinterpret_cast<const char *>(&v), sizeof(T));
}

template <typename T>
T get(std::istream &in)
{
    T v {};
    in.read(reinterpret_cast<char *>(&v), sizeof(T));
    if (!in)
        throw EngineError(EngineError::Code::BadFormat, "unexpected end of file");
    return v;
}

[[noreturn]] void badFormat(const std::string &msg)
{
    throw EngineError(EngineError::Code::BadFormat, msg);
}

}  // namespace

NetWeights NetWeights::zeros(const NetConfig &cfg)
{
    NetWeights w;
    w.config  = cfg;
    w.mapping = MappingWeights::zeros(cfg);
    w.depthwise.assign(cfg.feature / 2 * 9, 0.0f);
    w.heads = makeHeadWeights(cfg);
    return w;
}

NetWeights NetWeights::random(const NetConfig &cfg, std::uint64_t seed)
{
    NetWeights w;
    w.config  = cfg;
    w.mapping = MappingWeights::random(cfg, seed);
    w.heads   = randomHeadWeights(cfg, seed ^ 0x9e3779b97f4a7c15ULL);
    std::mt19937_64                       prng {seed + 1};
    std::uniform_real_distribution<float> dist(-1.0f / 3, 1.0f / 3);
    w.depthwise.resize(cfg.feature / 2 * 9);
    for (auto &x : w.depthwise)
        x = dist(prng);
    return w;
}

std::vector<TensorSpec> tensorLayout(const NetConfig &cfg)
{
    NetWeights              w = NetWeights::zeros(cfg);
    std::vector<TensorSpec> out;
    visitTensors(w, [&](const std::string &name, const Shape &shape, auto &&) {
        out.push_back({name, shape});
    });
    return out;
}

void writeWeights(const NetWeights &w, std::ostream &out)
{
    out.write("MIXW", 4);
    put<std::uint32_t>(out, WeightFileVersion);
    put(out, w.config.mapping);
    put(out, w.config.feature);
    put(out, w.config.policy);
    put(out, w.config.value);
    visitTensors(const_cast<NetWeights &>(w),
                 [&](const std::string &name, const Shape &shape, auto &&data) {
                     put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
                     out.write(name.data(), name.size());
                     put<std::uint32_t>(out, static_cast<std::uint32_t>(shape.size()));
                     for (auto d : shape)
                         put(out, d);
                     out.write(reinterpret_cast<const char *>(data.data()),
                               data.size() * sizeof(float));
                 });
}

NetWeights readWeights(std::istream &in)
{
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "MIXW", 4) != 0)
        throw EngineError(EngineError::Code::ConfigMismatch, "not a MIXW weight file");
    if (get<std::uint32_t>(in) != WeightFileVersion)
        throw EngineError(EngineError::Code::ConfigMismatch, "unsupported MIXW version");
    NetConfig cfg;
    cfg.mapping = get<std::uint32_t>(in);
    cfg.feature = get<std::uint32_t>(in);
    cfg.policy  = get<std::uint32_t>(in);
    cfg.value   = get<std::uint32_t>(in);
    cfg.validate();

    NetWeights w = NetWeights::zeros(cfg);
    visitTensors(w, [&](const std::string &name, const Shape &shape, auto &&data) {
        auto        len = get<std::uint32_t>(in);
        std::string fileName(len, '\0');
        if (len > 256)
            badFormat("tensor name too long");
        in.read(fileName.data(), len);
        if (fileName != name)
            badFormat("expected tensor " + name + ", found " + fileName);
        auto ndim = get<std::uint32_t>(in);
        if (ndim != shape.size())
            badFormat("rank mismatch for " + name);
        for (auto d : shape)
            if (get<std::uint32_t>(in) != d)
                throw EngineError(EngineError::Code::ConfigMismatch, "shape mismatch for " + name);
        in.read(reinterpret_cast<char *>(data.data()), data.size() * sizeof(float));
        if (!in)
            badFormat("truncated tensor " + name);
    });
    if (in.peek() != std::char_traits<char>::eof())
        badFormat("trailing bytes after last tensor");
    return w;
}

void saveWeights(const NetWeights &w, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw EngineError(EngineError::Code::IOError, "cannot write " + path.string());
    writeWeights(w, out);
    if (!out)
        throw EngineError(EngineError::Code::IOError, "write failed: " + path.string());
}

NetWeights loadWeights(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw EngineError(EngineError::Code::IOError, "cannot open " + path.string());
    return readWeights(in);
}

std::uint64_t fnv1a64(const void *data, std::size_t size)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto         *p = static_cast<const unsigned char *>(data);
    for (std::size_t i = 0; i < size; i++) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t weightDigest(const NetWeights &w)
{
    std::ostringstream out(std::ios::binary);
    writeWeights(w, out);
    const std::string bytes = out.str();
    return fnv1a64(bytes.data(), bytes.size());
}

void writeCodebook(const Codebook &cb, std::uint64_t digest, std::ostream &out)
{
    out.write("MIXC", 4);
    put<std::uint32_t>(out, CodebookFileVersion);
    put(out, cb.config.mapping);
    put(out, cb.config.feature);
    put(out, cb.config.policy);
    put(out, cb.config.value);
    put(out, digest);
    out.write(reinterpret_cast<const char *>(cb.hv.data()), cb.hv.size() * sizeof(std::int16_t));
    out.write(reinterpret_cast<const char *>(cb.di.data()), cb.di.size() * sizeof(std::int16_t));
}

std::optional<Codebook> readCodebook(std::istream &in,
                                     const NetConfig &expected,
                                     std::uint64_t expectedDigest)
{
    char magic[4] = {};
    in.read(magic, 4);
    if (!in || std::memcmp(magic, "MIXC", 4) != 0)
        return std::nullopt;
    try {
        if (get<std::uint32_t>(in) != CodebookFileVersion)
            return std::nullopt;
        NetConfig cfg;
        cfg.mapping = get<std::uint32_t>(in);
        cfg.feature = get<std::uint32_t>(in);
        cfg.policy  = get<std::uint32_t>(in);
        cfg.value   = get<std::uint32_t>(in);
        if (cfg != expected || get<std::uint64_t>(in) != expectedDigest)
            return std::nullopt;
    }
    catch (const EngineError &) {
        return std::nullopt;
    }
    Codebook cb;
    cb.config = expected;
    cb.hv.resize(size_t(pattern::PatternCount) * expected.feature);
    cb.di.resize(cb.hv.size());
    in.read(reinterpret_cast<char *>(cb.hv.data()), cb.hv.size() * sizeof(std::int16_t));
    in.read(reinterpret_cast<char *>(cb.di.data()), cb.di.size() * sizeof(std::int16_t));
    if (!in)
        return std::nullopt;
    return cb;
}

}  // namespace gomoku::mixnet
