#pragma once

#include <cstdint>
#include <string>

namespace gomoku::mixnet {

/// Channel sizes: mapping (M), feature (C), policy (P), value (V).
struct NetConfig
{
    std::uint32_t mapping = 64;
    std::uint32_t feature = 32;
    std::uint32_t policy  = 16;
    std::uint32_t value   = 32;

    static constexpr NetConfig small() { return {64, 32, 16, 32}; }
    static constexpr NetConfig medium() { return {128, 64, 32, 64}; }
    static constexpr NetConfig large() { return {256, 128, 64, 128}; }
    /// Reduced configuration for exhaustive tests.
    static constexpr NetConfig tiny() { return {16, 8, 8, 8}; }

    /// Throws EngineError(ConfigMismatch) unless C is even, P <= C, P <= 64
    /// and every size is positive.
    void validate() const;

    bool operator==(const NetConfig &) const = default;
};

/// Output channels of the dynamic point-wise policy convolution.
constexpr int PolicyDynOut = 16;

NetConfig   netConfigByName(const std::string &name);
std::string toString(const NetConfig &c);

}  // namespace gomoku::mixnet
