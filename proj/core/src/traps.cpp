#include "arw/traps.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "arw/engine.hpp"
#include "arw/initial_law.hpp"
#include "arw/instruction_field.hpp"

namespace arw {

namespace {

enum class Kind : std::int8_t { none, sleep, jump_left, jump_right };

struct SiteRec {
    std::uint64_t explored = 0;  // instructions examined so far at this site
    Kind last = Kind::none;
    Kind second_last = Kind::none;
};

struct Event {
    std::int32_t pos;
    std::uint64_t index;  // instruction index examined
};

struct Exploration {
    std::vector<Event> events;
    bool capped = false;
};

// Examine-and-follow from start until first arrival at stop.  Sleep
// instructions are examined and skipped; jumps move the explorer.
Exploration explore(const InstructionField& field, std::map<std::int32_t, SiteRec>& sites,
                    std::int32_t start, std::int32_t stop, std::uint64_t cap) {
    Exploration ex;
    std::int32_t pos = start;
    while (pos != stop) {
        SiteRec& rec = sites[pos];
        const std::uint64_t j = ++rec.explored;
        const Instruction ins = field.at(Site(pos), j);
        const Kind kind =
            ins.sleep ? Kind::sleep : (ins.offset[0] < 0 ? Kind::jump_left : Kind::jump_right);
        rec.second_last = rec.last;
        rec.last = kind;
        ex.events.push_back(Event{pos, j});
        if (ex.events.size() > cap) {
            ex.capped = true;
            return ex;
        }
        if (!ins.sleep) pos += ins.offset[0];
    }
    return ex;
}

// Particle positions with multiplicity, scanning outward from the origin on
// one side until at least n are found and the last occupied site is complete.
std::vector<std::int32_t> collect_particles(const InitialLaw& law, std::uint64_t seed,
                                            std::int32_t n, int direction) {
    std::vector<std::int32_t> xs;
    std::int32_t x = direction;
    while (static_cast<std::int32_t>(xs.size()) < n) {
        const std::int32_t c = law.sample_count(seed, Site(x), 0);
        for (std::int32_t j = 0; j < c; ++j) xs.push_back(x);
        x += direction;
        if (std::abs(x) > 100'000'000)
            throw std::runtime_error("trap_certify: no particles within scan range");
    }
    return xs;
}

}  // namespace

TrapReport trap_certify(double mu, double lambda, const JumpDistribution& jumps,
                        std::int32_t n_particles, std::uint64_t seed,
                        std::uint64_t exploration_cap) {
    if (jumps.dim() != 1 || !jumps.nearest_neighbor() || jumps.max_range() != 1 ||
        jumps.entries().size() != 2)
        throw std::invalid_argument(
            "trap_certify: two-sided nearest-neighbor 1D jumps required");
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw std::invalid_argument("trap_certify: finite lambda > 0 required");
    if (n_particles < 1) throw std::invalid_argument("trap_certify: n_particles >= 1 required");
    const InitialLaw law = InitialLaw::poisson(mu);
    const InstructionField field(seed, lambda, jumps);

    TrapReport report;
    if (law.sample_count(seed, origin, 0) > 0) {
        report.status = TrapReport::Status::occupied_origin;
        return report;
    }

    std::map<std::int32_t, SiteRec> sites;
    // Settlement toppling sequence, accumulated over both sides.
    std::vector<Site> sequence;

    struct SideState {
        std::vector<std::int32_t> xs;
        std::vector<std::int32_t> traps;
    };

    auto run_side = [&](int direction) -> bool {
        SideState side;
        side.xs = collect_particles(law, seed, n_particles, direction);
        // Complete a tied boundary site so the certified interval holds only
        // settled particles.
        std::size_t m = static_cast<std::size_t>(n_particles);
        while (m < side.xs.size() && side.xs[m] == side.xs[m - 1]) ++m;
        side.xs.resize(m);
        // Append the remaining occupants of the boundary site, if any.
        std::int32_t prev_trap = 0;
        for (std::size_t k = 0; k < side.xs.size(); ++k) {
            const std::int32_t xk = side.xs[k];
            Exploration ex = explore(field, sites, xk, prev_trap, exploration_cap);
            if (ex.capped) {
                report.status = TrapReport::Status::exploration_cap;
                report.failed_at = direction * static_cast<int>(k + 1);
                return false;
            }
            // Candidate traps live strictly between the previous trap and x_k.
            std::int32_t trap = 0;
            bool found = false;
            for (std::int32_t x = prev_trap + direction; x != xk; x += direction) {
                const auto it = sites.find(x);
                if (it == sites.end()) continue;
                if (it->second.second_last == Kind::sleep) {
                    trap = x;
                    found = true;
                    break;
                }
            }
            if (!found) {
                report.status = TrapReport::Status::no_trap;
                report.failed_at = direction * static_cast<int>(k + 1);
                return false;
            }
            // The settlement consumes the exploration prefix up to the trap
            // instruction (the second-last examined there).
            const std::uint64_t trap_index = sites[trap].explored - 1;
            std::size_t cut = 0;
            for (std::size_t e = 0; e < ex.events.size(); ++e)
                if (ex.events[e].pos == trap && ex.events[e].index == trap_index) {
                    cut = e + 1;
                    break;
                }
            if (cut == 0)
                throw std::logic_error("trap instruction not on its exploration path");
            for (std::size_t e = 0; e < cut; ++e) sequence.push_back(Site(ex.events[e].pos));
            // Instructions examined beyond the trap must sit in
            // (prev_trap, trap] on this side.
            for (std::size_t e = cut; e < ex.events.size(); ++e) {
                const std::int32_t p = ex.events[e].pos;
                const bool inside = direction > 0 ? (p > prev_trap && p <= trap)
                                                  : (p < prev_trap && p >= trap);
                if (!inside) report.corruption_confined = false;
            }
            side.traps.push_back(trap);
            report.gaps.push_back(std::abs(trap - prev_trap));
            prev_trap = trap;
        }
        if (direction > 0)
            report.traps_right = side.traps;
        else {
            report.traps_left = side.traps;
            std::reverse(report.traps_left.begin(), report.traps_left.end());
        }
        report.particles_settled += static_cast<std::int64_t>(side.xs.size());
        if (direction > 0)
            report.window_hi = side.xs.back();
        else
            report.window_lo = side.xs.back();
        return true;
    };

    if (!run_side(+1) || !run_side(-1)) return report;

    // Acceptable replay over the full explored span: every settled particle
    // walks its exploration path, transiently sleeping and resuming, and
    // finally stays asleep in its trap.
    std::int32_t span_lo = report.window_lo, span_hi = report.window_hi;
    for (const Site& s : sequence) {
        span_lo = std::min(span_lo, s[0]);
        span_hi = std::max(span_hi, s[0]);
    }
    {
        const Arena arena(1, Box::interval(span_lo, span_hi), 1, BoundaryMode::frozen);
        Configuration cfg(arena);
        for (std::int32_t x = report.window_lo; x <= report.window_hi; ++x) {
            if (x == 0) continue;
            const std::int32_t c = law.sample_count(seed, Site(x), 0);
            if (c > 0) cfg.set(Site(x), SiteState::active(c));
        }
        const StabilizationResult replay = stabilize_acceptable(std::move(cfg), field, sequence);
        report.replay_origin_odometer = replay.origin_odometer;
        report.replay_ok =
            replay.status == StabStatus::stable && replay.origin_odometer == 0;
    }

    // Independent legal stabilization of the certified window; the least
    // action principle forces a zero origin odometer.
    {
        const Arena arena(1, Box::interval(report.window_lo, report.window_hi), 1,
                          BoundaryMode::frozen);
        Configuration cfg = sample_initial(law, arena, seed);
        const StabilizationResult legal =
            stabilize(std::move(cfg), field, TopplingPolicy::fifo(),
                      default_cap(arena, std::max(1.0, mu)) * 64);
        report.engine_origin_odometer = legal.origin_odometer;
        report.engine_verified =
            legal.status == StabStatus::stable && legal.origin_odometer == 0;
    }

    report.status = TrapReport::Status::success;
    return report;
}

}  // namespace arw
