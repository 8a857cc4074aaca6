#include "arw/initial_law.hpp"

#include <numeric>

namespace arw {

double InitialLaw::mean_density() const {
    if (kind_ == Kind::deterministic) {
        if (counts_.empty()) return 0.0;
        const double total = std::accumulate(counts_.begin(), counts_.end(), 0.0);
        return total / static_cast<double>(counts_.size());
    }
    return mu_;
}

std::int32_t InitialLaw::sample_count(std::uint64_t seed, const Site& site,
                                      std::int64_t row_index) const {
    switch (kind_) {
        case Kind::deterministic: {
            if (row_index < 0 || row_index >= static_cast<std::int64_t>(counts_.size()))
                throw std::out_of_range("deterministic initial law shorter than window");
            return counts_[static_cast<std::size_t>(row_index)];
        }
        case Kind::bernoulli: {
            rng::Stream s(site.key(rng::combine(seed, rng::salt_initial)));
            return s.bernoulli(mu_) ? 1 : 0;
        }
        case Kind::poisson:
        default: {
            rng::Stream s(site.key(rng::combine(seed, rng::salt_initial)));
            return s.poisson(mu_);
        }
    }
}

Configuration sample_initial(const InitialLaw& law, const Arena& arena, std::uint64_t seed) {
    if (law.kind() == InitialLaw::Kind::deterministic &&
        static_cast<std::int64_t>(law.counts().size()) != arena.window_cells())
        throw std::invalid_argument("deterministic initial law size must equal window cell count");
    Configuration cfg(arena);
    const std::int64_t cells = arena.cells();
    std::int64_t row = 0;
    for (std::int64_t i = 0; i < cells; ++i) {
        const Site s = arena.site_at(i);
        if (!arena.in_window(s)) continue;
        const std::int32_t n = law.sample_count(seed, s, row++);
        if (n > 0) cfg.set_index(i, SiteState::active(n));
    }
    return cfg;
}

}  // namespace arw
