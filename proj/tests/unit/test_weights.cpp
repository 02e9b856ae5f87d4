#include "../nets.h"
#include "../support.h"
#include "doctest.h"
#include "gomoku/weights.h"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gomoku;
using namespace gomoku::mixnet;

namespace {

std::string serialize(const NetWeights &w)
{
    std::ostringstream out(std::ios::binary);
    writeWeights(w, out);
    return out.str();
}

EngineError::Code loadError(const std::string &bytes)
{
    std::istringstream in(bytes, std::ios::binary);
    try {
        readWeights(in);
    }
    catch (const EngineError &e) {
        return e.code();
    }
    FAIL("load unexpectedly succeeded");
    return EngineError::Code::InvalidArgument;
}

}  // namespace

TEST_CASE("weight file round trip is byte identical")
{
    NetWeights w = NetWeights::random(NetConfig::tiny(), 51);
    std::string a = serialize(w);
    std::istringstream in(a, std::ios::binary);
    NetWeights r = readWeights(in);
    CHECK(r.config == w.config);
    CHECK(serialize(r) == a);
    CHECK(serialize(w) == a);
    CHECK(weightDigest(r) == weightDigest(w));
    CHECK(a.substr(0, 4) == "MIXW");
}

TEST_CASE("tensor layout lists every parameter once")
{
    NetConfig cfg = NetConfig::small();
    auto      layout = tensorLayout(cfg);
    size_t    floats = 0, header = 4 + 4 + 16;
    for (auto &t : layout) {
        size_t n = 1;
        for (auto d : t.shape)
            n *= d;
        floats += n;
        header += 4 + t.name.size() + 4 + 4 * t.shape.size();
    }
    CHECK(layout.front().name == "mapping.hv.dirconv1.weight");
    CHECK(serialize(NetWeights::zeros(cfg)).size() == header + 4 * floats);
}

TEST_CASE("malformed weight files are rejected")
{
    std::string good = serialize(NetWeights::random(NetConfig::tiny(), 52));

    std::string magic = good;
    magic[0]          = 'X';
    CHECK(loadError(magic) == EngineError::Code::ConfigMismatch);

    std::string truncated = good.substr(0, good.size() - 7);
    CHECK(loadError(truncated) == EngineError::Code::BadFormat);

    CHECK(loadError(good + "x") == EngineError::Code::BadFormat);

    std::string badConfig = good;
    badConfig[12] = 3;  // odd feature channel count
    CHECK(loadError(badConfig) == EngineError::Code::ConfigMismatch);

    CHECK_THROWS_AS(loadWeights("/nonexistent/w.mixw"), EngineError);
}

TEST_CASE("fnv1a reference vectors")
{
    CHECK(fnv1a64("", 0) == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a", 1) == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar", 6) == 0x85944171f73967e8ULL);
}

TEST_CASE("codebook cache round trip and digest check")
{
    NetWeights w  = NetWeights::random(NetConfig::tiny(), 7);
    auto       net = testutil::tinyNet();
    REQUIRE(weightDigest(w) == net->digest);

    std::ostringstream out(std::ios::binary);
    writeCodebook(net->codebook, net->digest, out);
    std::string bytes = out.str();

    std::istringstream in(bytes, std::ios::binary);
    auto               cb = readCodebook(in, w.config, net->digest);
    REQUIRE(cb.has_value());
    CHECK(*cb == net->codebook);

    std::istringstream stale(bytes, std::ios::binary);
    CHECK_FALSE(readCodebook(stale, w.config, net->digest ^ 1).has_value());
    std::istringstream other(bytes, std::ios::binary);
    CHECK_FALSE(readCodebook(other, NetConfig::small(), net->digest).has_value());
    std::istringstream cut(bytes.substr(0, bytes.size() / 2), std::ios::binary);
    CHECK_FALSE(readCodebook(cut, w.config, net->digest).has_value());
}

TEST_CASE("net load bakes once then reuses the cache")
{
    auto dir = std::filesystem::temp_directory_path() / "gomoku_weights_test";
    std::filesystem::create_directories(dir);
    NetWeights w = NetWeights::random(NetConfig::tiny(), 7);
    saveWeights(w, dir / "net.mixw");
    std::filesystem::remove(dir / "net.mixc");

    auto a = Net::load(dir / "net.mixw", dir / "net.mixc");
    REQUIRE(std::filesystem::exists(dir / "net.mixc"));
    auto stamp = std::filesystem::last_write_time(dir / "net.mixc");
    auto b     = Net::load(dir / "net.mixw", dir / "net.mixc");
    CHECK(std::filesystem::last_write_time(dir / "net.mixc") == stamp);
    CHECK(a->codebook == b->codebook);
    CHECK(a->codebook == testutil::tinyNet()->codebook);

    std::mt19937_64 rng(53);
    Evaluator       ea(a, 15, 15), eb(b, 15, 15);
    for (int t = 0; t < 10; t++) {
        Board x = testutil::randomOngoing(rng, 15, 15, 30);
        CHECK(ea.evaluate(x).policy == eb.evaluate(x).policy);
    }
    std::filesystem::remove_all(dir);
}
