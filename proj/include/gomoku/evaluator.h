#pragma once

#include "accumulator.h"
#include "weights.h"

#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

namespace gomoku::mixnet {

enum class Precision { Quantized, Float };

/// Immutable inference data shared by every evaluator.
struct Net
{
    NetConfig       config;
    Codebook        codebook;
    DepthwiseKernel kernel;
    HeadWeights     heads;
    QuantHeads      quant;
    std::uint64_t   digest = 0;

    static std::shared_ptr<const Net> build(const NetWeights &w, bool parallelBake = true);
    static std::shared_ptr<const Net> build(const NetWeights &w, Codebook codebook);

    /// Load weights and reuse the codebook cache at `cachePath` when it
    /// matches; otherwise bake and (if a path is given) rewrite the cache.
    static std::shared_ptr<const Net> load(const std::filesystem::path &weights,
                                           const std::optional<std::filesystem::path> &cachePath);
};

/// Thread-confined evaluator. Follows a board by diffing move histories and
/// applying incremental updates, falling back to a full refresh.
class Evaluator
{
public:
    Evaluator(std::shared_ptr<const Net> net, int height, int width);

    /// Bring the accumulator in line with `board`.
    void sync(const Board &board);
    /// Rebuild from scratch at `board`.
    void refresh(const Board &board);

    /// Network output from the side to move's point of view.
    Evaluation  evaluate(const Board &board, Precision prec = Precision::Quantized);
    ValueTriple evaluateValue(const Board &board, Precision prec = Precision::Quantized);

    const Accumulator &accumulator() const { return acc_; }
    Accumulator       &accumulator() { return acc_; }
    const Net         &net() const { return *net_; }

    std::uint64_t evaluations() const { return evaluations_; }
    std::uint64_t refreshes() const { return refreshes_; }

private:
    void refreshFrom(const Board &board);

    std::shared_ptr<const Net> net_;
    Accumulator                acc_;
    std::vector<Pos>           base_;  // history at the last refresh
    std::vector<Move>          applied_;
    int                        height_;
    int                        width_;
    bool                       valid_       = false;
    std::uint64_t              evaluations_ = 0;
    std::uint64_t              refreshes_   = 0;
};

}  // namespace gomoku::mixnet
