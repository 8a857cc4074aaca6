#pragma once

#include <cmath>
#include <cstdint>

// Counter-based pseudorandomness.  Every random quantity in the library is a
// pure function of (seed, key...), so instruction fields and initial
// configurations can be re-read in any order, from any thread, and across
// process restarts, and always agree bit-for-bit.

namespace arw::rng {

// SplitMix64 finalizer (Stafford mix13): 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t golden64 = 0x9e3779b97f4a7c15ULL;

// Order-sensitive keyed combine.
constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t k) noexcept {
    return mix64((h + golden64) ^ mix64(k + golden64));
}

constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t k1, std::uint64_t k2) noexcept {
    return combine(combine(h, k1), k2);
}

constexpr std::uint64_t combine(std::uint64_t h, std::uint64_t k1, std::uint64_t k2,
                                std::uint64_t k3) noexcept {
    return combine(combine(h, k1, k2), k3);
}

// Signed -> unsigned without losing small-magnitude structure.
constexpr std::uint64_t zigzag(std::int64_t v) noexcept {
    return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}

// Top-53-bit uniform in [0, 1).
constexpr double u01(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Domain separation salts for the independent random fields of a run.
enum : std::uint64_t {
    salt_instruction = 0x11,
    salt_initial     = 0x22,
    salt_policy      = 0x33,
    salt_ctmc        = 0x44,
    salt_replicate   = 0x55,
    salt_walk        = 0x66,
    salt_ghost       = 0x77,
    salt_experiment  = 0x88,
};

// Sequential stream for event-driven code (CTMC, Monte Carlo walks).
class Stream {
  public:
    explicit Stream(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() noexcept { return mix64(state_ += golden64); }

    double next_u01() noexcept { return u01(next()); }

    // Uniform in {0, ..., n-1}, unbiased (rejection on the tail band).
    std::uint64_t below(std::uint64_t n) noexcept {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
        std::uint64_t x = next();
        while (x > limit) x = next();
        return x % n;
    }

    bool bernoulli(double p) noexcept { return next_u01() < p; }

    double exponential(double rate) noexcept {
        // 1 - u in (0, 1], so the log is finite.
        return -std::log(1.0 - next_u01()) / rate;
    }

    // Knuth product method; fine for the desk-scale means used here.
    std::int32_t poisson(double mu) noexcept {
        const double threshold = std::exp(-mu);
        std::int32_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= next_u01();
        } while (p > threshold);
        return k - 1;
    }

  private:
    std::uint64_t state_;
};

// Deterministic replicate seeding: replicate r of a command run with master
// seed s always works from combine(s, salt_replicate, r), independent of
// scheduling or executor count.
constexpr std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t replicate) noexcept {
    return combine(master, salt_replicate, replicate);
}

}  // namespace arw::rng
