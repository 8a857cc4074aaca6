#include "arw/ctmc.hpp"

#include <cmath>
#include <stdexcept>

namespace arw {

CtmcResult ctmc_run(Configuration config, double lambda, const JumpDistribution& jumps,
                    std::uint64_t seed, CtmcHorizon horizon, bool record_log) {
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw std::invalid_argument("ctmc_run requires finite lambda > 0");
    const Arena& arena = config.arena();
    if (arena.dim() != jumps.dim()) throw std::invalid_argument("arena/jump dimension mismatch");
    if (arena.mode() == BoundaryMode::frozen && arena.halo() < jumps.max_range())
        throw std::invalid_argument("frozen arena halo smaller than max jump range");

    rng::Stream stream(rng::combine(seed, rng::salt_ctmc));
    const double sleep_prob = lambda / (1.0 + lambda);

    // Active window sites; refreshed lazily.
    const std::int64_t cells = arena.cells();
    std::vector<std::int64_t> active;
    std::vector<std::uint8_t> listed(static_cast<std::size_t>(cells), 0);
    for (std::int64_t i = 0; i < cells; ++i)
        if (arena.in_window(arena.site_at(i)) && config.at_index(i).is_active()) {
            active.push_back(i);
            listed[static_cast<std::size_t>(i)] = 1;
        }

    CtmcResult result{std::move(config), {}, false, 0, 0.0};
    Configuration& cfg = result.final;

    auto total_active = [&]() {
        std::int64_t n = 0;
        for (std::size_t k = 0; k < active.size();) {
            const std::int64_t i = active[k];
            const std::int32_t a = cfg.at_index(i).active_count();
            if (a == 0) {
                listed[static_cast<std::size_t>(i)] = 0;
                active[k] = active.back();
                active.pop_back();
                continue;
            }
            n += a;
            ++k;
        }
        return n;
    };

    while (result.events < horizon.max_events) {
        const std::int64_t total = total_active();
        if (total == 0) {
            result.absorbed = true;
            break;
        }
        result.time += stream.exponential((1.0 + lambda) * static_cast<double>(total));

        // Site chosen proportionally to its active count.
        std::int64_t pick = static_cast<std::int64_t>(stream.below(static_cast<std::uint64_t>(total)));
        std::int64_t site_idx = -1;
        for (std::int64_t i : active) {
            pick -= cfg.at_index(i).active_count();
            if (pick < 0) {
                site_idx = i;
                break;
            }
        }
        const Site x = arena.site_at(site_idx);
        ++result.events;

        if (stream.next_u01() < sleep_prob) {
            // Sleep attempt: no effect unless the particle is alone.
            cfg.set_index(site_idx, sleep_apply(cfg.at_index(site_idx)));
            if (record_log) result.log.push_back({result.time, x, true, Site{}});
            continue;
        }

        const Site z = jumps.sample(stream.next_u01());
        cfg.set_index(site_idx, minus_one(cfg.at_index(site_idx)));
        if (record_log) result.log.push_back({result.time, x, false, z});
        Site y = x + z;
        switch (arena.mode()) {
            case BoundaryMode::torus:
                y = arena.wrap(y);
                break;
            case BoundaryMode::dissipative:
                if (!arena.in_window(y)) {
                    cfg.add_outside(1);
                    continue;
                }
                break;
            case BoundaryMode::frozen:
                break;  // lands in window or halo; halo particles freeze
        }
        const std::int64_t yi = arena.index_of(y);
        cfg.set_index(yi, plus_one(cfg.at_index(yi)));
        if (arena.in_window(y) && cfg.at_index(yi).is_active() &&
            !listed[static_cast<std::size_t>(yi)]) {
            active.push_back(yi);
            listed[static_cast<std::size_t>(yi)] = 1;
        }
    }
    if (!result.absorbed && total_active() == 0) result.absorbed = true;
    return result;
}

}  // namespace arw
