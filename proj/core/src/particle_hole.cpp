#include "arw/particle_hole.hpp"

#include <stdexcept>

namespace arw {

ParticleHoleResult particle_hole_run(const InitialLaw& law, const Arena& torus,
                                     const JumpDistribution& jumps, std::uint64_t seed,
                                     ParticleHoleHorizon horizon) {
    if (torus.mode() != BoundaryMode::torus)
        throw std::invalid_argument("particle_hole_run requires a torus arena");
    if (torus.dim() != jumps.dim()) throw std::invalid_argument("arena/jump dimension mismatch");

    const std::int64_t cells = torus.cells();
    ParticleHoleResult result;
    result.filled.assign(static_cast<std::size_t>(cells), 0);
    result.settler.assign(static_cast<std::size_t>(cells), ParticleLabel{});

    rng::Stream stream(rng::combine(seed, rng::salt_walk));

    struct Free {
        std::int64_t cell;
        ParticleLabel label;
    };
    std::vector<Free> free;

    // t = 0: every occupied site fills its hole with a uniformly chosen
    // particle; the rest start free.
    std::int64_t row = 0;
    std::uint64_t unfilled = 0;
    for (std::int64_t i = 0; i < cells; ++i) {
        const Site s = torus.site_at(i);
        const std::int32_t n = law.sample_count(seed, s, row++);
        if (n == 0) {
            ++unfilled;
            continue;
        }
        const std::int32_t keep = static_cast<std::int32_t>(stream.below(static_cast<std::uint64_t>(n)));
        result.filled[static_cast<std::size_t>(i)] = 1;
        result.settler[static_cast<std::size_t>(i)] = ParticleLabel{s, keep};
        ++result.filled_count;
        ++result.settled_count;
        for (std::int32_t j = 0; j < n; ++j)
            if (j != keep) free.push_back(Free{i, ParticleLabel{s, j}});
    }
    result.bijection_ok = result.filled_count == result.settled_count;

    // Free particles walk; an arrival at an unfilled hole is always alone
    // there (unfilled sites hold no free particles) and settles immediately.
    while (!free.empty() && unfilled > 0 && result.events < horizon.max_events) {
        ++result.events;
        const std::size_t r = static_cast<std::size_t>(stream.below(free.size()));
        Free& p = free[r];
        const Site from = torus.site_at(p.cell);
        const Site to = torus.wrap(from + jumps.sample(stream.next_u01()));
        const std::int64_t ti = torus.index_of(to);
        if (!result.filled[static_cast<std::size_t>(ti)]) {
            result.filled[static_cast<std::size_t>(ti)] = 1;
            result.settler[static_cast<std::size_t>(ti)] = p.label;
            ++result.filled_count;
            ++result.settled_count;
            --unfilled;
            free[r] = free.back();
            free.pop_back();
        } else {
            p.cell = ti;
        }
        if (result.filled_count != result.settled_count) result.bijection_ok = false;
    }

    result.free_count = free.size();
    result.finished = free.empty() || unfilled == 0;
    return result;
}

}  // namespace arw
