#include "gomoku/tt.h"

#include <bit>

namespace gomoku {

TranspositionTable::TranspositionTable(std::size_t megabytes)
{
    resize(megabytes);
}

void TranspositionTable::resize(std::size_t megabytes)
{
    std::size_t n = std::max<std::size_t>(1, megabytes * 1024 * 1024 / sizeof(Bucket));
    buckets_.assign(std::bit_floor(n), Bucket {});
}

void TranspositionTable::clear()
{
    std::fill(buckets_.begin(), buckets_.end(), Bucket {});
    generation_ = 0;
}

bool TranspositionTable::probe(HashKey key, TTEntry &out) const
{
    for (const TTEntry &e : bucket(key).entries)
        if (e.bound != Bound::None && e.key == key) {
            out = e;
            return true;
        }
    return false;
}

void TranspositionTable::store(HashKey key, int depth, Bound bound, int score, int move)
{
    Bucket  &b      = bucket(key);
    TTEntry *victim = nullptr;
    for (TTEntry &e : b.entries)
        if (e.bound == Bound::None || e.key == key) {
            victim = &e;
            break;
        }
    if (!victim) {
        victim = &b.entries[0];
        for (TTEntry &e : b.entries) {
            bool older = e.generation != generation_ && victim->generation == generation_;
            if (e.depth < victim->depth || (e.depth == victim->depth && older))
                victim = &e;
        }
    }
    // Keep a deeper result for the same position unless it is stale.
    if (victim->key == key && victim->bound != Bound::None && victim->depth > depth
        && victim->generation == generation_ && bound != Bound::Exact)
        return;
    *victim = {key,
               static_cast<std::int16_t>(score),
               static_cast<std::int8_t>(depth),
               bound,
               static_cast<std::uint16_t>(move < 0 ? TTEntry::NoMove : move),
               generation_};
}

}  // namespace gomoku
