#pragma once

#include "codebook.h"
#include "heads.h"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gomoku::mixnet {

constexpr std::uint32_t WeightFileVersion   = 1;
constexpr std::uint32_t CodebookFileVersion = 1;

/// Complete float parameter set of the network.
struct NetWeights
{
    NetConfig          config;
    MappingWeights     mapping;
    std::vector<float> depthwise;  // [C/2][3][3]
    HeadWeights        heads;

    static NetWeights zeros(const NetConfig &cfg);
    static NetWeights random(const NetConfig &cfg, std::uint64_t seed);
};

/// Name and shape of every tensor in file order.
struct TensorSpec
{
    std::string                 name;
    std::vector<std::uint32_t>  shape;
};
std::vector<TensorSpec> tensorLayout(const NetConfig &cfg);

void       writeWeights(const NetWeights &w, std::ostream &out);
NetWeights readWeights(std::istream &in);
void       saveWeights(const NetWeights &w, const std::filesystem::path &path);
NetWeights loadWeights(const std::filesystem::path &path);

/// FNV-1a 64-bit digest of the serialized weight file.
std::uint64_t weightDigest(const NetWeights &w);
std::uint64_t fnv1a64(const void *data, std::size_t size);

void writeCodebook(const Codebook &cb, std::uint64_t digest, std::ostream &out);
/// Returns nullopt when the cache is unreadable or was built from other weights.
std::optional<Codebook> readCodebook(std::istream &in,
                                     const NetConfig &expected,
                                     std::uint64_t expectedDigest);

}  // namespace gomoku::mixnet
