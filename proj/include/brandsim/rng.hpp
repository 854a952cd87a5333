#pragma once

// Random stream used by every stochastic choice in a simulation.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the C++
// standard. The transforms below are written out instead of using the
// <random> distributions, whose algorithms are implementation-defined, so a
// run reproduces bit-for-bit across standard libraries:
//
//   uniform01()        (next() >> 11) * 2^-53                     in [0, 1)
//   uniform_open01()   1 - uniform01()                            in (0, 1]
//   below(n)           rejection: draw r until r >= (2^64 - n) mod n,
//                      return r mod n                             in [0, n)
//   bernoulli(p)       uniform01() < p   (always consumes one draw)

#include <cstdint>
#include <random>

namespace brandsim {

class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static constexpr result_type min() { return std::mt19937_64::min(); }
    static constexpr result_type max() { return std::mt19937_64::max(); }

    result_type operator()() { return engine_(); }

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform_open01() { return 1.0 - uniform01(); }

    /// Unbiased integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return r % n;
        }
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer applied to base + index * 0x9e3779b97f4a7c15.
constexpr std::uint64_t derive_child_seed(std::uint64_t base, std::uint64_t index) noexcept {
    std::uint64_t z = base + index * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace brandsim
