#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace revdet {

// splitmix64 step (Steele, Lea, Flood 2014). Used both as the simulator's
// generator and for hashing tokens into pseudo-embedding streams, because the
// output must be identical on every platform; the distributions in <random>
// are implementation-defined.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// FNV-1a over raw bytes; stable token hash.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform double in (0, 1]; never returns 0 so it is safe under log().
    double next_unit() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Unbiased integer in [0, n); rejection sampling on the top of the range.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        const std::uint64_t rem = (0 - n) % n;  // 2^64 mod n
        if (rem == 0) return next_u64() % n;
        const std::uint64_t reject_from = 0 - rem;  // 2^64 - rem
        std::uint64_t x = next_u64();
        while (x >= reject_from) x = next_u64();
        return x % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(
                        below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Exact Poisson sample by counting unit-exponential arrivals within rate.
    // O(rate) draws, exact for any rate without underflow.
    std::uint64_t poisson(double rate) {
        std::uint64_t k = 0;
        double acc = 0.0;
        while (true) {
            acc += -std::log(next_unit());
            if (acc >= rate) break;
            ++k;
        }
        return k;
    }

private:
    std::uint64_t state_;
};

}  // namespace revdet
