#include "arw/engine.hpp"

#include <algorithm>
#include <cmath>

namespace arw {

namespace {

const SiteState lone_active = SiteState::active(1);

// Precomputed toppling context for one (configuration, field) pair.
struct Toppler {
    Configuration& cfg;
    Odometer& od;
    const InstructionField& field;
    const Arena& arena;
    const BoundaryMode mode;
    const bool jump_only;
    std::vector<std::uint64_t> keys;      // per storage cell
    std::vector<std::uint8_t> window;     // per storage cell
    std::vector<std::int64_t> deltas;     // per jump entry (frozen fast path)
    std::vector<Site> offsets;            // per jump entry
    std::uint64_t topplings = 0;
    std::vector<std::int64_t>* record = nullptr;

    Toppler(Configuration& c, Odometer& o, const InstructionField& f)
        : cfg(c), od(o), field(f), arena(c.arena()), mode(arena.mode()),
          jump_only(f.jump_only()) {
        if (arena.dim() != field.jumps().dim())
            throw std::invalid_argument("arena/jump dimension mismatch");
        if (mode == BoundaryMode::frozen && arena.halo() < field.jumps().max_range())
            throw std::invalid_argument("frozen arena halo smaller than max jump range");
        const std::int64_t cells = arena.cells();
        keys.resize(static_cast<std::size_t>(cells));
        window.resize(static_cast<std::size_t>(cells));
        for (std::int64_t i = 0; i < cells; ++i) {
            const Site s = arena.site_at(i);
            keys[static_cast<std::size_t>(i)] = field.site_key(s);
            window[static_cast<std::size_t>(i)] = arena.in_window(s) ? 1 : 0;
        }
        for (const JumpEntry& e : field.jumps().entries()) {
            deltas.push_back(arena.flat_delta(e.offset));
            offsets.push_back(e.offset);
        }
    }

    bool unstable(std::int64_t i) const { return cfg.at_index(i).is_active(); }

    bool window_stable() const {
        const std::int64_t cells = arena.cells();
        for (std::int64_t i = 0; i < cells; ++i)
            if (window[static_cast<std::size_t>(i)] && unstable(i)) return false;
        return true;
    }

    // A lone active particle in a jump-only field sleeps instantly.
    void settle_pass() {
        if (!jump_only) return;
        const std::int64_t cells = arena.cells();
        for (std::int64_t i = 0; i < cells; ++i)
            if (window[static_cast<std::size_t>(i)] && cfg.at_index(i) == lone_active)
                cfg.set_index(i, SiteState::sleeping());
    }

    // Topples site index i.  Returns the storage index of the jump target
    // when it lies in the window (so callers can refresh their bookkeeping),
    // otherwise -1.
    std::int64_t topple_index(std::int64_t i, ToppleMode tmode) {
        const SiteState s = cfg.at_index(i);
        if (tmode == ToppleMode::legal) {
            if (!s.is_active()) throw illegal_toppling("legal toppling of a stable site");
        } else if (s.is_empty()) {
            throw not_acceptable("acceptable toppling of an empty site");
        }
        const std::uint64_t j = ++od.at_index(i);
        ++topplings;
        if (record) record->push_back(i);
        const int e = field.entry_at_keyed(keys[static_cast<std::size_t>(i)], j);
        if (e < 0) {
            cfg.set_index(i, sleep_apply(s));
            return -1;
        }
        cfg.set_index(i, minus_one(s));
        std::int64_t ti = -1;
        switch (mode) {
            case BoundaryMode::frozen:
                ti = i + deltas[static_cast<std::size_t>(e)];
                break;
            case BoundaryMode::torus:
                ti = arena.index_of(
                    arena.wrap(arena.site_at(i) + offsets[static_cast<std::size_t>(e)]));
                break;
            case BoundaryMode::dissipative: {
                const Site y = arena.site_at(i) + offsets[static_cast<std::size_t>(e)];
                if (arena.in_window(y))
                    ti = arena.index_of(y);
                else
                    cfg.add_outside(1);
                break;
            }
        }
        if (ti >= 0) cfg.set_index(ti, plus_one(cfg.at_index(ti)));
        if (jump_only) {
            if (window[static_cast<std::size_t>(i)] && cfg.at_index(i) == lone_active)
                cfg.set_index(i, SiteState::sleeping());
            if (ti >= 0 && window[static_cast<std::size_t>(ti)] &&
                cfg.at_index(ti) == lone_active)
                cfg.set_index(ti, SiteState::sleeping());
        }
        return (ti >= 0 && window[static_cast<std::size_t>(ti)]) ? ti : -1;
    }

    std::vector<std::int64_t> window_indices() const {
        std::vector<std::int64_t> out;
        const std::int64_t cells = arena.cells();
        for (std::int64_t i = 0; i < cells; ++i)
            if (window[static_cast<std::size_t>(i)]) out.push_back(i);
        return out;
    }
};

StabStatus run_queue(Toppler& t, bool fifo, std::uint64_t cap) {
    std::vector<std::int64_t> queue;
    std::size_t head = 0;
    std::vector<std::uint8_t> queued(t.keys.size(), 0);
    for (std::int64_t i : t.window_indices())
        if (t.unstable(i)) {
            queue.push_back(i);
            queued[static_cast<std::size_t>(i)] = 1;
        }
    auto push = [&](std::int64_t i) {
        if (i >= 0 && !queued[static_cast<std::size_t>(i)] && t.unstable(i)) {
            queue.push_back(i);
            queued[static_cast<std::size_t>(i)] = 1;
        }
    };
    while (head < queue.size()) {
        std::int64_t i;
        if (fifo) {
            i = queue[head++];
            if (head > 4096 && head * 2 > queue.size()) {
                queue.erase(queue.begin(), queue.begin() + static_cast<std::ptrdiff_t>(head));
                head = 0;
            }
        } else {
            i = queue.back();
            queue.pop_back();
        }
        queued[static_cast<std::size_t>(i)] = 0;
        if (!t.unstable(i)) continue;
        if (t.topplings >= cap) return StabStatus::cap_exceeded;
        const std::int64_t target = t.topple_index(i, ToppleMode::legal);
        push(i);
        push(target);
    }
    return StabStatus::stable;
}

StabStatus run_uniform(Toppler& t, std::uint64_t policy_seed, std::uint64_t cap) {
    rng::Stream pick(rng::combine(policy_seed, rng::salt_policy));
    std::vector<std::int64_t> pool;
    std::vector<std::uint8_t> pooled(t.keys.size(), 0);
    for (std::int64_t i : t.window_indices())
        if (t.unstable(i)) {
            pool.push_back(i);
            pooled[static_cast<std::size_t>(i)] = 1;
        }
    while (!pool.empty()) {
        const std::size_t r = static_cast<std::size_t>(pick.below(pool.size()));
        const std::int64_t i = pool[r];
        if (!t.unstable(i)) {
            pool[r] = pool.back();
            pool.pop_back();
            pooled[static_cast<std::size_t>(i)] = 0;
            continue;
        }
        if (t.topplings >= cap) return StabStatus::cap_exceeded;
        const std::int64_t target = t.topple_index(i, ToppleMode::legal);
        if (target >= 0 && !pooled[static_cast<std::size_t>(target)] && t.unstable(target)) {
            pool.push_back(target);
            pooled[static_cast<std::size_t>(target)] = 1;
        }
    }
    return StabStatus::stable;
}

// Lexicographic passes, exhausting each site before moving on.
StabStatus run_sweep(Toppler& t, std::uint64_t cap) {
    const std::vector<std::int64_t> order = t.window_indices();
    bool any = true;
    while (any) {
        any = false;
        for (std::int64_t i : order) {
            while (t.unstable(i)) {
                if (t.topplings >= cap)
                    return t.window_stable() ? StabStatus::stable : StabStatus::cap_exceeded;
                t.topple_index(i, ToppleMode::legal);
                any = true;
            }
        }
    }
    return StabStatus::stable;
}

StabStatus run_explicit(Toppler& t, std::span<const Site> sequence, ToppleMode mode,
                        std::uint64_t cap) {
    for (const Site& s : sequence) {
        const Site w = t.arena.wrap(s);
        if (!t.arena.in_window(w))
            throw std::invalid_argument("explicit sequence names a site outside the window");
        if (t.topplings >= cap) return StabStatus::cap_exceeded;
        t.topple_index(t.arena.index_of(w), mode);
    }
    return t.window_stable() ? StabStatus::stable : StabStatus::cap_exceeded;
}

StabStatus stabilize_impl(Configuration& config, Odometer& odometer,
                          const InstructionField& field, const TopplingPolicy& policy,
                          std::uint64_t cap, std::uint64_t* topplings_out,
                          std::vector<std::int64_t>* record) {
    Toppler t(config, odometer, field);
    t.record = record;
    t.settle_pass();
    StabStatus status = StabStatus::stable;
    switch (policy.kind) {
        case TopplingPolicy::Kind::fifo:
            status = run_queue(t, true, cap);
            break;
        case TopplingPolicy::Kind::lifo:
            status = run_queue(t, false, cap);
            break;
        case TopplingPolicy::Kind::sweep:
            status = run_sweep(t, cap);
            break;
        case TopplingPolicy::Kind::uniform_random:
            status = run_uniform(t, policy.policy_seed, cap);
            break;
        case TopplingPolicy::Kind::explicit_sequence:
            status = run_explicit(t, policy.sequence, ToppleMode::legal, cap);
            break;
    }
    if (topplings_out) *topplings_out += t.topplings;
    return status;
}

}  // namespace

void topple(EngineState& state, const Site& x, ToppleMode mode) {
    if (!state.field) throw std::invalid_argument("engine state has no instruction field");
    Toppler t(state.config, state.odometer, *state.field);
    const Site w = state.config.arena().wrap(x);
    if (!state.config.arena().in_window(w))
        throw std::invalid_argument("toppled site outside the window");
    t.topple_index(state.config.arena().index_of(w), mode);
}

TopplingPolicy TopplingPolicy::parse(const std::string& name, std::uint64_t policy_seed) {
    if (name == "fifo") return fifo();
    if (name == "lifo") return lifo();
    if (name == "sweep") return sweep();
    if (name == "random") return uniform_random(policy_seed);
    throw std::invalid_argument("unknown toppling policy: " + name);
}

std::string TopplingPolicy::name() const {
    switch (kind) {
        case Kind::fifo: return "fifo";
        case Kind::lifo: return "lifo";
        case Kind::sweep: return "sweep";
        case Kind::uniform_random: return "random";
        case Kind::explicit_sequence: return "explicit";
    }
    return "?";
}

std::uint64_t default_cap(const Arena& arena, double mean_density) {
    const double cap = 100.0 * static_cast<double>(arena.window_cells()) *
                       std::max(1.0, mean_density);
    return static_cast<std::uint64_t>(cap);
}

StabStatus stabilize_in_place(Configuration& config, Odometer& odometer,
                              const InstructionField& field, const TopplingPolicy& policy,
                              std::uint64_t cap, std::uint64_t* topplings_out) {
    return stabilize_impl(config, odometer, field, policy, cap, topplings_out, nullptr);
}

StabilizationResult stabilize(Configuration config, const InstructionField& field,
                              const TopplingPolicy& policy, std::uint64_t cap) {
    Odometer od(config.arena());
    std::uint64_t topplings = 0;
    const StabStatus status = stabilize_impl(config, od, field, policy, cap, &topplings, nullptr);
    const Arena& arena = config.arena();
    const std::uint64_t origin_od =
        arena.in_window(origin) ? od.at_index(arena.index_of(origin)) : 0;
    return StabilizationResult{status, std::move(config), std::move(od), topplings, origin_od};
}

StabilizationResult stabilize_acceptable(Configuration config, const InstructionField& field,
                                         std::span<const Site> sequence) {
    Odometer od(config.arena());
    Toppler t(config, od, field);
    t.settle_pass();
    const StabStatus status =
        run_explicit(t, sequence, ToppleMode::acceptable, ~std::uint64_t{0});
    const Arena& arena = config.arena();
    const std::uint64_t origin_od =
        arena.in_window(origin) ? od.at_index(arena.index_of(origin)) : 0;
    return StabilizationResult{status, std::move(config), std::move(od), t.topplings, origin_od};
}

AbelianReport check_abelian(const InstanceSpec& spec, std::span<const TopplingPolicy> policies,
                            std::uint64_t seed) {
    if (policies.size() < 2) throw std::invalid_argument("check_abelian needs >= 2 policies");
    const InstructionField field(seed, spec.lambda, spec.jumps);
    const Configuration cfg0 = sample_initial(spec.law, spec.arena, seed);
    const std::uint64_t cap =
        spec.cap ? spec.cap : default_cap(spec.arena, spec.law.mean_density());

    AbelianReport report;
    std::optional<StabilizationResult> base;
    for (const TopplingPolicy& policy : policies) {
        StabilizationResult r = stabilize(cfg0, field, policy, cap);
        report.all_stable = report.all_stable && r.status == StabStatus::stable;
        report.topplings_total += r.topplings_total;
        if (!base) {
            base = std::move(r);
            continue;
        }
        if (!(r.final == base->final)) report.all_equal = false;
        const auto& a = base->odometer.counts();
        const auto& b = r.odometer.counts();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::uint64_t d = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
            if (d != 0) {
                report.all_equal = false;
                report.max_odometer_discrepancy = std::max(report.max_odometer_discrepancy, d);
            }
        }
    }
    return report;
}

LeastActionReport check_least_action(const InstanceSpec& spec, std::uint64_t seed,
                                     int pad_topplings) {
    const InstructionField field(seed, spec.lambda, spec.jumps);
    const Configuration cfg0 = sample_initial(spec.law, spec.arena, seed);
    const std::uint64_t cap =
        spec.cap ? spec.cap : default_cap(spec.arena, spec.law.mean_density());

    LeastActionReport report;

    // beta: a plain legal stabilization.
    const StabilizationResult beta = stabilize(cfg0, field, TopplingPolicy::fifo(), cap);
    if (beta.status != StabStatus::stable) return report;

    // alpha: a legal run padded with acceptable topplings of sleeping sites,
    // re-stabilizing after each, recorded and then replayed as one sequence.
    Configuration cfgA = cfg0;
    Odometer odA(cfgA.arena());
    std::vector<std::int64_t> rec;
    if (stabilize_impl(cfgA, odA, field, TopplingPolicy::fifo(), cap, nullptr, &rec) !=
        StabStatus::stable)
        return report;
    const Arena& arena = cfg0.arena();
    for (int p = 0; p < pad_topplings; ++p) {
        std::int64_t sleeper = -1;
        const std::int64_t cells = arena.cells();
        for (std::int64_t i = 0; i < cells; ++i)
            if (arena.in_window(arena.site_at(i)) && cfgA.at_index(i).is_sleeping()) {
                sleeper = i;
                break;
            }
        if (sleeper < 0) break;
        {
            Toppler t(cfgA, odA, field);
            t.record = &rec;
            t.topple_index(sleeper, ToppleMode::acceptable);
        }
        if (stabilize_impl(cfgA, odA, field, TopplingPolicy::fifo(), cap, nullptr, &rec) !=
            StabStatus::stable)
            return report;
    }

    std::vector<Site> alpha;
    alpha.reserve(rec.size());
    for (std::int64_t i : rec) alpha.push_back(arena.site_at(i));
    const StabilizationResult replay = stabilize_acceptable(cfg0, field, alpha);
    if (replay.status != StabStatus::stable) return report;
    report.constructed = true;

    const auto& mb = beta.odometer.counts();
    const auto& ma = replay.odometer.counts();
    report.beta_total = beta.topplings_total;
    report.alpha_total = replay.topplings_total;
    for (std::size_t i = 0; i < mb.size(); ++i) {
        if (mb[i] > ma[i]) report.dominated = false;
        if (mb[i] < ma[i]) report.strict = true;
    }
    return report;
}

std::vector<OdometerProfileEntry> odometer_profile(const InitialLaw& law, double lambda,
                                                   const JumpDistribution& jumps, int dim,
                                                   std::span<const std::int32_t> radii,
                                                   std::uint64_t seed, std::uint64_t cap) {
    std::vector<OdometerProfileEntry> out;
    const InstructionField field(seed, lambda, jumps);
    const int halo = std::max(1, static_cast<int>(jumps.max_range()));
    for (std::int32_t radius : radii) {
        const Arena arena(dim, Box::centered(radius, dim), halo, BoundaryMode::frozen);
        Configuration cfg = sample_initial(law, arena, seed);
        const std::uint64_t run_cap = cap ? cap : default_cap(arena, law.mean_density());
        const StabilizationResult r =
            stabilize(std::move(cfg), field, TopplingPolicy::fifo(), run_cap);
        out.push_back(OdometerProfileEntry{radius, r.origin_odometer, r.status});
    }
    return out;
}

}  // namespace arw
