#include "arw/animals.hpp"

#include <algorithm>

namespace arw {

namespace {

struct Enumerator {
    const Arena& arena;
    const Configuration& cfg;
    int cap;
    std::vector<std::uint8_t> in_set;
    std::vector<std::uint8_t> seen;
    AnimalReport& report;

    Enumerator(const Configuration& c, int size_cap, AnimalReport& r)
        : arena(c.arena()), cfg(c), cap(size_cap),
          in_set(static_cast<std::size_t>(arena.cells()), 0),
          seen(static_cast<std::size_t>(arena.cells()), 0),
          report(r) {}

    void record(int size, std::int64_t weight) {
        ++report.sets_enumerated;
        auto& best = report.max_weight[static_cast<std::size_t>(size - 1)];
        best = std::max(best, weight);
    }

    void neighbors(std::int64_t i, std::vector<std::int64_t>& out) const {
        out.clear();
        const Site s = arena.site_at(i);
        for (int axis = 0; axis < arena.dim(); ++axis) {
            for (int sign = -1; sign <= 1; sign += 2) {
                Site t = s;
                t[axis] += sign;
                if (arena.in_window(t)) out.push_back(arena.index_of(t));
            }
        }
    }

    // Each connected window subset containing the origin appears exactly
    // once: cells earlier in the extension list are excluded from the
    // subtrees of later ones.
    void grow(const std::vector<std::int64_t>& ext, int size, std::int64_t weight) {
        std::vector<std::int64_t> nbrs;
        for (std::size_t i = 0; i < ext.size(); ++i) {
            const std::int64_t v = ext[i];
            const std::int64_t w =
                weight + cfg.at_index(v).particle_count();
            in_set[static_cast<std::size_t>(v)] = 1;
            record(size + 1, w);
            if (size + 1 < cap) {
                std::vector<std::int64_t> next(ext.begin() + static_cast<std::ptrdiff_t>(i + 1),
                                               ext.end());
                std::vector<std::int64_t> added;
                neighbors(v, nbrs);
                for (std::int64_t u : nbrs)
                    if (!in_set[static_cast<std::size_t>(u)] && !seen[static_cast<std::size_t>(u)]) {
                        seen[static_cast<std::size_t>(u)] = 1;
                        next.push_back(u);
                        added.push_back(u);
                    }
                grow(next, size + 1, w);
                for (std::int64_t u : added) seen[static_cast<std::size_t>(u)] = 0;
            }
            in_set[static_cast<std::size_t>(v)] = 0;
        }
    }
};

}  // namespace

AnimalReport greedy_animal_max(const Configuration& config, int size_cap) {
    if (size_cap < 1) throw std::invalid_argument("size cap must be >= 1");
    if (size_cap > 12)
        throw size_cap_too_large("animal size cap > 12: enumeration grows exponentially");
    const Arena& arena = config.arena();
    if (!arena.in_window(origin))
        throw std::invalid_argument("window must contain the origin");

    AnimalReport report;
    report.size_cap = size_cap;
    report.max_weight.assign(static_cast<std::size_t>(size_cap), std::int64_t{-1});

    Enumerator e(config, size_cap, report);
    const std::int64_t root = arena.index_of(origin);
    e.in_set[static_cast<std::size_t>(root)] = 1;
    e.seen[static_cast<std::size_t>(root)] = 1;
    const std::int64_t w0 = config.at_index(root).particle_count();
    e.record(1, w0);
    if (size_cap > 1) {
        std::vector<std::int64_t> ext;
        e.neighbors(root, ext);
        for (std::int64_t u : ext) e.seen[static_cast<std::size_t>(u)] = 1;
        e.grow(ext, 1, w0);
    }

    report.max_ratio.resize(static_cast<std::size_t>(size_cap));
    report.fillable.resize(static_cast<std::size_t>(size_cap));
    for (int s = 1; s <= size_cap; ++s) {
        const std::int64_t w = report.max_weight[static_cast<std::size_t>(s - 1)];
        report.max_ratio[static_cast<std::size_t>(s - 1)] =
            w < 0 ? 0.0 : static_cast<double>(w) / static_cast<double>(s);
        report.fillable[static_cast<std::size_t>(s - 1)] = w >= s ? 1 : 0;
    }
    return report;
}

}  // namespace arw
