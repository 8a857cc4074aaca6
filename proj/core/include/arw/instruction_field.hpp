#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "arw/jumps.hpp"
#include "arw/lattice.hpp"
#include "arw/rng.hpp"

namespace arw {

struct Instruction {
    bool sleep = false;
    Site offset;  // valid when !sleep

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

// The fixed random field of instructions: instruction (x, j) is a pure
// function of (seed, x, j), so re-reads in any order always agree.  Marginals:
// sleep with probability lambda/(1+lambda), jump z with p(z)/(1+lambda),
// independent across (x, j).  lambda = infinity yields a jump-only field; the
// engine then applies the instant-sleep rule itself.
class InstructionField {
  public:
    InstructionField(std::uint64_t seed, double lambda, JumpDistribution jumps)
        : seed_(seed), lambda_(lambda), jumps_(std::move(jumps)) {
        if (std::isnan(lambda) || lambda <= 0.0)
            throw std::invalid_argument("lambda must be in (0, inf]");
        sleep_prob_ = std::isinf(lambda) ? 0.0 : lambda / (1.0 + lambda);
        base_ = rng::combine(seed_, rng::salt_instruction);
    }

    std::uint64_t seed() const { return seed_; }
    double lambda() const { return lambda_; }
    bool jump_only() const { return std::isinf(lambda_); }
    double sleep_prob() const { return sleep_prob_; }
    const JumpDistribution& jumps() const { return jumps_; }

    // Premixed per-site key for the fast path.
    std::uint64_t site_key(const Site& x) const { return x.key(base_); }

    // Entry index of instruction (site_key, j): -1 for sleep, otherwise an
    // index into jumps().entries().  j >= 1.
    int entry_at_keyed(std::uint64_t site_key, std::uint64_t j) const {
        const double u = rng::u01(rng::mix64(site_key + j * rng::golden64));
        if (u < sleep_prob_) return -1;
        const double v = (u - sleep_prob_) / (1.0 - sleep_prob_);
        return static_cast<int>(jumps_.pick(v < 1.0 ? v : std::nextafter(1.0, 0.0)));
    }

    Instruction at(const Site& x, std::uint64_t j) const {
        if (j < 1) throw std::invalid_argument("instruction index j must be >= 1");
        const int e = entry_at_keyed(site_key(x), j);
        if (e < 0) return Instruction{true, Site{}};
        return Instruction{false, jumps_.entries()[static_cast<std::size_t>(e)].offset};
    }

  private:
    std::uint64_t seed_;
    double lambda_;
    JumpDistribution jumps_;
    double sleep_prob_;
    std::uint64_t base_;
};

}  // namespace arw
