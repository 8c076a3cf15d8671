#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace colsel {

/// SplitMix64 finalizer. Used only to derive substream seeds; the streams
/// themselves come from std::mt19937_64, whose output is specified
/// bit-exactly by the standard.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Deterministic seed for substream `stream` of a master seed. This is the
/// mixing function behind every per-trial / per-method seed in the repo:
///   derive_seed(master, stream) = splitmix64(master + stream * 2^64/phi).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return splitmix64(master + stream * 0x9E3779B97F4A7C15ull);
}

/// Seeded generator with hand-rolled distributions. std::normal_distribution
/// and friends are implementation-defined, so Box-Muller and bounded draws
/// are spelled out here to keep every stream reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform in [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller, caching the second value of each pair.
    double gaussian() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();  // (0, 1]
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

    /// Uniform integer in [0, bound), bound >= 1, unbiased via rejection.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t x = gen_();
            if (x >= threshold) return x % bound;
        }
    }

private:
    std::mt19937_64 gen_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace colsel
