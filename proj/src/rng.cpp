#include "spectral_lab/rng.hpp"

#include <cmath>

#include "spectral_lab/core.hpp"

namespace slab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t CounterRng::next_u64() { return splitmix64(key_ ^ splitmix64(ctr_++)); }

std::uint64_t CounterRng::at(std::uint64_t seed, std::uint64_t counter) {
    return splitmix64(splitmix64(seed) ^ splitmix64(counter));
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double CounterRng::sign() { return (next_u64() >> 63) ? 1.0 : -1.0; }

}  // namespace slab
