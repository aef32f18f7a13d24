#pragma once

#include <cstdint>

namespace slab {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

std::uint64_t splitmix64(std::uint64_t x);

// Per-sample seed: master seed xor sample index.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) { return master ^ index; }

// Counter-based stream: value k is a hash of (seed, k), so any draw can be
// reproduced without replaying earlier ones.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) : key_(splitmix64(seed)), ctr_(counter) {}

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double normal();   // Box-Muller, consumes two counters
    double sign();     // +-1

    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter);

private:
    std::uint64_t key_;
    std::uint64_t ctr_;
};

}  // namespace slab
