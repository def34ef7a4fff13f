#include "qammeter/rng.hpp"

#include <cmath>

namespace qam {

namespace {

// splitmix64 finalizer (Steele, Lea, Flood 2014); full 64-bit avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t hash2(std::uint64_t key, std::uint64_t ctr) {
    // Two mixing rounds over the (key, counter) pair.
    return mix64(mix64(key ^ 0x5851f42d4c957f2dULL) + ctr);
}

} // namespace

CounterRng CounterRng::substream(std::uint64_t master_seed, std::uint64_t index) {
    return CounterRng(hash2(mix64(master_seed), index));
}

std::uint64_t CounterRng::next_u64() {
    return hash2(key_, counter_++);
}

double CounterRng::next_double() {
    // 53 mantissa bits -> [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_double_open() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    const double u1 = next_double_open();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace qam
