#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arw/lattice.hpp"

namespace arw {

class invalid_density : public std::invalid_argument {
  public:
    explicit invalid_density(const std::string& what) : std::invalid_argument(what) {}
};

// i.i.d. initial law for eta_0: all initial states are active or empty (no
// sleepers at time zero).
class InitialLaw {
  public:
    enum class Kind { poisson, bernoulli, deterministic };

    static InitialLaw poisson(double mu) {
        if (!(mu > 0.0)) throw invalid_density("Poisson density must be > 0");
        return InitialLaw(Kind::poisson, mu, {});
    }
    static InitialLaw bernoulli(double mu) {
        if (!(mu >= 0.0) || !(mu <= 1.0)) throw invalid_density("Bernoulli density must be in [0,1]");
        return InitialLaw(Kind::bernoulli, mu, {});
    }
    // Per-site counts in window row-major order (first axis fastest).
    static InitialLaw deterministic(std::vector<std::int32_t> counts) {
        for (std::int32_t c : counts)
            if (c < 0) throw invalid_density("negative deterministic count");
        return InitialLaw(Kind::deterministic, 0.0, std::move(counts));
    }

    Kind kind() const { return kind_; }
    double mu() const { return mu_; }
    const std::vector<std::int32_t>& counts() const { return counts_; }

    // Mean number of particles per site, for cap heuristics.
    double mean_density() const;

    // Per-site count, deterministic in (seed, site).  For the deterministic
    // kind, row_index is the window row-major index of the site.
    std::int32_t sample_count(std::uint64_t seed, const Site& site, std::int64_t row_index) const;

  private:
    InitialLaw(Kind kind, double mu, std::vector<std::int32_t> counts)
        : kind_(kind), mu_(mu), counts_(std::move(counts)) {}

    Kind kind_;
    double mu_;
    std::vector<std::int32_t> counts_;
};

// Samples eta_0 over the arena window (halo empty), deterministically in
// (seed, site): nested windows drawn from the same seed agree on overlaps.
Configuration sample_initial(const InitialLaw& law, const Arena& arena, std::uint64_t seed);

}  // namespace arw
