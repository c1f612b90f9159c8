#pragma once

#include <cstdint>

namespace omt {

// Counter-free splittable PRNG: a (master_seed, stream_index) pair fully
// determines the output sequence, so parallel trials reproduce regardless
// of scheduling. State is xoshiro256** seeded through splitmix64.
class SeededSource {
public:
    explicit SeededSource(std::uint64_t master_seed, std::uint64_t stream_index = 0);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next();

    // Uniform draw from [0, bound), unbiased via power-of-two rejection.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t master_seed_ = 0;
    std::uint64_t stream_index_ = 0;
    std::uint64_t state_[4] = {};
};

std::uint64_t splitmix64(std::uint64_t& state);

// Order-sensitive combiner used to derive per-cell seeds from a master seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

} // namespace omt
