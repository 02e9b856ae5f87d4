#pragma once

#include "board.h"

#include <cstdint>
#include <vector>

namespace gomoku {

enum class Bound : std::uint8_t { None, Upper, Lower, Exact };

struct TTEntry
{
    HashKey       key   = 0;
    std::int16_t  score = 0;
    std::int8_t   depth = 0;
    Bound         bound = Bound::None;
    std::uint16_t move  = NoMove;
    std::uint8_t  generation = 0;

    static constexpr std::uint16_t NoMove = 0xffff;
};

/// Four-way bucketed table. Replacement takes an empty slot or the same key,
/// else the shallowest entry, older generation first on equal depth.
class TranspositionTable
{
public:
    static constexpr int Ways = 4;

    explicit TranspositionTable(std::size_t megabytes = 64);

    void resize(std::size_t megabytes);
    void clear();
    void newSearch() { generation_++; }

    /// Copies the entry and returns true on a full key match.
    bool probe(HashKey key, TTEntry &out) const;
    void store(HashKey key, int depth, Bound bound, int score, int move);

    std::size_t bucketCount() const { return buckets_.size(); }

private:
    struct Bucket
    {
        TTEntry entries[Ways];
    };

    Bucket &bucket(HashKey key) { return buckets_[key & (buckets_.size() - 1)]; }
    const Bucket &bucket(HashKey key) const { return buckets_[key & (buckets_.size() - 1)]; }

    std::vector<Bucket> buckets_;
    std::uint8_t        generation_ = 0;
};

}  // namespace gomoku
