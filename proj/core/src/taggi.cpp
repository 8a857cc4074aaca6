#include "arw/taggi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "arw/initial_law.hpp"
#include "arw/rng.hpp"

namespace arw {

namespace {

struct Board {
    std::int32_t big_l;
    std::vector<std::int32_t> cnt;      // particles present, sites -2L .. -1
    std::vector<std::uint8_t> asleep;   // the lone occupant is a sleeper
    std::int64_t origin_count = 0;
    std::int32_t leftmost = 0;

    explicit Board(std::int32_t l)
        : big_l(l),
          cnt(static_cast<std::size_t>(2 * l), 0),
          asleep(static_cast<std::size_t>(2 * l), 0) {}

    std::size_t ix(std::int32_t x) const { return static_cast<std::size_t>(x + 2 * big_l); }
};

enum class WalkEnd { parked, slept, reached_origin, overflow };

// Routes one particle (already lifted off the board).  It parks at the first
// empty site where settle(pos) holds; while alone over an empty site outside
// the settle zone a sleep instruction puts it to sleep for good; sleep
// attempts over company have no effect.
template <typename SettlePred>
WalkEnd move_particle(Board& b, std::int32_t start, double sleep_prob,
                      const JumpDistribution& jumps, rng::Stream& s, SettlePred settle) {
    std::int32_t pos = start;
    for (;;) {
        if (pos >= 0) {
            ++b.origin_count;
            return WalkEnd::reached_origin;
        }
        if (pos < -2 * b.big_l) return WalkEnd::overflow;
        b.leftmost = std::min(b.leftmost, pos);
        if (b.cnt[b.ix(pos)] == 0 && settle(pos)) {
            b.cnt[b.ix(pos)] = 1;
            return WalkEnd::parked;
        }
        if (s.bernoulli(sleep_prob)) {
            if (b.cnt[b.ix(pos)] == 0) {
                b.cnt[b.ix(pos)] = 1;
                b.asleep[b.ix(pos)] = 1;
                return WalkEnd::slept;
            }
            continue;
        }
        pos += jumps.sample(s.next_u01())[0];
    }
}

}  // namespace

TaggiStagedResult taggi_staged_run(std::int32_t big_l, double mu, double lambda,
                                   const JumpDistribution& jumps, std::uint64_t seed) {
    if (big_l < 2) throw std::invalid_argument("taggi_staged_run: L must be >= 2");
    if (jumps.dim() != 1) throw std::invalid_argument("taggi_staged_run: 1D jumps required");
    if (!(jumps.drift()[0] > 0.0))
        throw std::invalid_argument("taggi_staged_run: right drift required");
    if (!(lambda > 0.0) || std::isinf(lambda))
        throw std::invalid_argument("taggi_staged_run: finite lambda > 0 required");
    const double sleep_prob = lambda / (1.0 + lambda);

    Board b(big_l);
    rng::Stream stream(rng::combine(seed, rng::salt_walk));

    const InitialLaw law = InitialLaw::poisson(mu);
    TaggiStagedResult result;
    for (std::int32_t i = 0; i < big_l; ++i) {
        const std::int32_t x = -big_l + i;
        const std::int32_t n = law.sample_count(seed, Site(x), i);
        b.cnt[b.ix(x)] = n;
        result.initial_particles += n;
    }

    // Stage 1: spread the particles of [-L, -1] into singletons.
    auto settle_stage1 = [big_l](std::int32_t pos) { return pos >= -big_l; };
    for (std::int32_t x = -big_l; x <= -1; ++x) {
        while (b.cnt[b.ix(x)] >= 2) {
            --b.cnt[b.ix(x)];
            switch (move_particle(b, x, sleep_prob, jumps, stream, settle_stage1)) {
                case WalkEnd::slept: ++result.stage1_losses; break;
                case WalkEnd::overflow: ++result.overflow; break;
                default: break;
            }
        }
    }

    // Stage 2: left-to-right sweep; the singleton at x is routed past x.
    for (std::int32_t x = -big_l; x <= -1; ++x) {
        if (b.cnt[b.ix(x)] != 1 || b.asleep[b.ix(x)]) continue;
        b.cnt[b.ix(x)] = 0;
        auto settle_stage2 = [x](std::int32_t pos) { return pos > x; };
        switch (move_particle(b, x, sleep_prob, jumps, stream, settle_stage2)) {
            case WalkEnd::slept: ++result.stage2_losses; break;
            case WalkEnd::overflow: ++result.overflow; break;
            default: break;
        }
    }

    result.n_l = b.origin_count;
    result.leftmost_visited = b.leftmost;
    std::int64_t sleepers = 0;
    for (std::size_t i = 0; i < b.cnt.size(); ++i)
        if (b.cnt[i] == 1) ++sleepers;
    result.conserved =
        result.initial_particles == result.n_l + sleepers + result.overflow &&
        sleepers == result.stage1_losses + result.stage2_losses;
    return result;
}

}  // namespace arw
