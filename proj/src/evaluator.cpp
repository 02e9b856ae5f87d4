#include "gomoku/evaluator.h"

#include <cmath>
#include <fstream>

namespace gomoku::mixnet {

std::shared_ptr<const Net> Net::build(const NetWeights &w, Codebook codebook)
{
    w.config.validate();
    if (codebook.config != w.config)
        throw EngineError(EngineError::Code::ConfigMismatch, "codebook built for another config");
    if (!allFinite(w.heads))
        throw EngineError(EngineError::Code::NonFiniteWeight, "non-finite head weight");
    for (float x : w.depthwise)
        if (!std::isfinite(x))
            throw EngineError(EngineError::Code::NonFiniteWeight, "non-finite depth-wise weight");

    auto net      = std::make_shared<Net>();
    net->config   = w.config;
    net->codebook = std::move(codebook);
    net->kernel   = DepthwiseKernel::quantize(w.depthwise, w.config.feature / 2);
    net->heads    = w.heads;
    net->quant    = quantizeHeads(w.heads);
    net->digest   = weightDigest(w);
    return net;
}

std::shared_ptr<const Net> Net::build(const NetWeights &w, bool parallelBake)
{
    Codebook cb = parallelBake ? bakeCodebook(w.mapping, w.config)
                               : bakeCodebookSerial(w.mapping, w.config);
    return build(w, std::move(cb));
}

std::shared_ptr<const Net> Net::load(const std::filesystem::path &weights,
                                     const std::optional<std::filesystem::path> &cachePath)
{
    NetWeights    w      = loadWeights(weights);
    std::uint64_t digest = weightDigest(w);
    if (cachePath) {
        std::ifstream in(*cachePath, std::ios::binary);
        if (in)
            if (auto cb = readCodebook(in, w.config, digest))
                return build(w, std::move(*cb));
    }
    Codebook cb = bakeCodebook(w.mapping, w.config);
    if (cachePath) {
        std::ofstream out(*cachePath, std::ios::binary);
        if (!out)
            throw EngineError(EngineError::Code::IOError, "cannot write " + cachePath->string());
        writeCodebook(cb, digest, out);
    }
    return build(w, std::move(cb));
}

Evaluator::Evaluator(std::shared_ptr<const Net> net, int height, int width)
    : net_(std::move(net))
    , acc_(net_->codebook, net_->kernel, height, width)
    , height_(height)
    , width_(width)
{}

void Evaluator::refreshFrom(const Board &board)
{
    acc_.refresh(board);
    base_.clear();
    for (const Move &m : board.history())
        base_.push_back(m.pos);
    applied_.clear();
    valid_ = true;
    refreshes_++;
}

void Evaluator::refresh(const Board &board)
{
    if (board.height() != height_ || board.width() != width_)
        throw EngineError(EngineError::Code::InvalidArgument, "board size differs from evaluator");
    refreshFrom(board);
}

void Evaluator::sync(const Board &board)
{
    if (board.height() != height_ || board.width() != width_)
        throw EngineError(EngineError::Code::InvalidArgument, "board size differs from evaluator");
    auto hist = board.history();
    if (!valid_ || hist.size() < base_.size()) {
        refreshFrom(board);
        return;
    }
    for (size_t i = 0; i < base_.size(); i++)
        if (hist[i].pos != base_[i]) {
            refreshFrom(board);
            return;
        }

    size_t common = 0;
    const size_t tail = hist.size() - base_.size();
    while (common < applied_.size() && common < tail
           && applied_[common].pos == hist[base_.size() + common].pos
           && applied_[common].color == hist[base_.size() + common].color)
        common++;

    // Undoing far back costs more than rebuilding.
    if (applied_.size() - common + tail - common > 64) {
        refreshFrom(board);
        return;
    }
    while (applied_.size() > common) {
        acc_.undoMove();
        applied_.pop_back();
    }
    for (size_t i = base_.size() + common; i < hist.size(); i++) {
        acc_.applyMove(hist[i].pos, hist[i].color);
        applied_.push_back(hist[i]);
    }
}

Evaluation Evaluator::evaluate(const Board &board, Precision prec)
{
    sync(board);
    evaluations_++;
    FeatureMapView     f = acc_.featureMap(board.sideToMove());
    std::vector<float> g = globalMean(f);

    const int            cells = board.cellCount();
    std::unique_ptr<bool[]> legal(new bool[cells]);
    for (int i = 0; i < cells; i++)
        legal[i] = board.at(board.pos(i)) == Cell::Empty;
    std::span<const bool> mask(legal.get(), cells);

    Evaluation e;
    if (prec == Precision::Quantized) {
        e.value  = valueForward(f, g, net_->quant);
        e.policy = policyForward(f, g, net_->quant, mask);
    }
    else {
        e.value  = valueForward(f, g, net_->heads);
        e.policy = policyForward(f, g, net_->heads, mask);
    }
    return e;
}

ValueTriple Evaluator::evaluateValue(const Board &board, Precision prec)
{
    sync(board);
    evaluations_++;
    FeatureMapView     f = acc_.featureMap(board.sideToMove());
    std::vector<float> g = globalMean(f);
    return prec == Precision::Quantized ? valueForward(f, g, net_->quant)
                                        : valueForward(f, g, net_->heads);
}

}  // namespace gomoku::mixnet
