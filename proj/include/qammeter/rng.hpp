#ifndef QAMMETER_RNG_HPP
#define QAMMETER_RNG_HPP

#include <cstdint>

namespace qam {

/// Counter-based pseudorandom generator: every draw is a stateless hash of
/// (key, counter), so streams can be split per trajectory and replayed from
/// any point. Identical (key, draw index) gives identical output under any
/// parallel schedule.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0)
        : key_(key), counter_(counter) {}

    /// Independent stream derived from a master seed and a stream index.
    static CounterRng substream(std::uint64_t master_seed, std::uint64_t index);

    std::uint64_t next_u64();

    /// Uniform in [0, 1).
    double next_double();

    /// Uniform in (0, 1] (safe as a log argument).
    double next_double_open();

    /// Standard normal via Box-Muller; consumes exactly two counter slots.
    double next_normal();

    std::uint64_t key() const { return key_; }
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace qam

#endif
