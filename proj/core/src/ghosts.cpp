#include "arw/ghosts.hpp"

#include <stdexcept>

#include "arw/parallel.hpp"
#include "arw/rng.hpp"
#include "arw/stats.hpp"

namespace arw {

namespace {

struct Ball {
    std::int32_t radius;
    std::int32_t width;                 // 2r + 1
    std::vector<std::uint8_t> inside;   // bounding-box mask
    std::vector<std::int32_t> xs, ys;   // member coordinates in scan order

    explicit Ball(std::int32_t r) : radius(r), width(2 * r + 1) {
        inside.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(width), 0);
        for (std::int32_t x = -r; x <= r; ++x)
            for (std::int32_t y = -r; y <= r; ++y)
                if (x * x + y * y <= r * r) {
                    inside[idx(x, y)] = 1;
                    xs.push_back(x);
                    ys.push_back(y);
                }
    }

    std::size_t idx(std::int32_t x, std::int32_t y) const {
        return static_cast<std::size_t>(x + radius) * static_cast<std::size_t>(width) +
               static_cast<std::size_t>(y + radius);
    }
    bool contains(std::int32_t x, std::int32_t y) const {
        if (x < -radius || x > radius || y < -radius || y > radius) return false;
        return inside[idx(x, y)] != 0;
    }
};

constexpr std::int32_t dx[4] = {1, -1, 0, 0};
constexpr std::int32_t dy[4] = {0, 0, 1, -1};

// Walk from (x, y) until it leaves the ball; reports whether it touched the
// origin (the starting site counts).
bool ghost_visits_origin(const Ball& ball, std::int32_t x, std::int32_t y, rng::Stream& s) {
    bool hit = (x == 0 && y == 0);
    while (!hit && ball.contains(x, y)) {
        const std::uint64_t d = s.below(4);
        x += dx[d];
        y += dy[d];
        if (x == 0 && y == 0) hit = true;
    }
    return hit;
}

GhostCounts run_rep(const Ball& ball, double mu, std::uint64_t rep_seed) {
    std::vector<std::int32_t> initial(ball.inside.size(), 0);
    std::vector<std::int32_t> cnt(ball.inside.size(), 0);
    std::vector<std::uint8_t> settled(ball.inside.size(), 0);

    rng::Stream init(rng::combine(rep_seed, rng::salt_initial));
    for (std::size_t k = 0; k < ball.xs.size(); ++k) {
        const std::int32_t n = init.poisson(mu);
        initial[ball.idx(ball.xs[k], ball.ys[k])] = n;
        cnt[ball.idx(ball.xs[k], ball.ys[k])] = n;
    }

    GhostCounts out;

    // Ordered pass: move each initial particle until alone or out of the
    // ball.  Particles that settled at an earlier site's turn stay put.
    for (std::size_t k = 0; k < ball.xs.size(); ++k) {
        const std::int32_t sx = ball.xs[k];
        const std::int32_t sy = ball.ys[k];
        const std::int32_t n = initial[ball.idx(sx, sy)];
        for (std::int32_t j = 0; j < n; ++j) {
            rng::Stream walk(rng::combine(rep_seed, rng::salt_walk,
                                          rng::combine(rng::zigzag(sx), rng::zigzag(sy)),
                                          static_cast<std::uint64_t>(j)));
            --cnt[ball.idx(sx, sy)];
            std::int32_t x = sx, y = sy;
            bool visited_particle = (x == 0 && y == 0);
            bool exited = false;
            while (cnt[ball.idx(x, y)] != 0) {
                const std::uint64_t d = walk.below(4);
                x += dx[d];
                y += dy[d];
                if (!ball.contains(x, y)) {
                    exited = true;
                    break;
                }
                if (x == 0 && y == 0) visited_particle = true;
            }
            bool visited_ghost = false;
            bool ghost_hits_origin = false;
            if (!exited) {
                // Settle here; the rest of the walk is the real ghost.
                cnt[ball.idx(x, y)] = 1;
                settled[ball.idx(x, y)] = 1;
                ghost_hits_origin = (x == 0 && y == 0);  // ghost starting site counts
                while (ball.contains(x, y)) {
                    const std::uint64_t d = walk.below(4);
                    x += dx[d];
                    y += dy[d];
                    if (ball.contains(x, y) && x == 0 && y == 0) visited_ghost = true;
                }
                ghost_hits_origin = ghost_hits_origin || visited_ghost;
            }
            if (visited_particle || visited_ghost) ++out.w;
            if (!visited_particle && visited_ghost) ++out.l;
            if (ghost_hits_origin) ++out.l_tilde;
        }
    }

    // Artificial ghosts restore one ghost per site.
    for (std::size_t k = 0; k < ball.xs.size(); ++k) {
        if (settled[ball.idx(ball.xs[k], ball.ys[k])]) continue;
        rng::Stream g(rng::combine(rep_seed, rng::salt_ghost,
                                   rng::combine(rng::zigzag(ball.xs[k]), rng::zigzag(ball.ys[k]))));
        if (ghost_visits_origin(ball, ball.xs[k], ball.ys[k], g)) ++out.l_tilde;
    }
    return out;
}

}  // namespace

GhostReport ghost_experiment(std::int32_t radius, double mu, std::uint64_t seed,
                             std::uint64_t reps, int threads) {
    if (radius < 2) throw std::invalid_argument("ghost_experiment: radius >= 2 required");
    if (!(mu > 0.0)) throw std::invalid_argument("ghost_experiment: mu > 0 required");
    const Ball ball(radius);

    GhostReport report;
    report.radius = radius;
    report.reps = reps;
    report.per_rep.assign(reps, GhostCounts{});
    parallel_for(reps, threads, [&](std::uint64_t r) {
        report.per_rep[r] = run_rep(ball, mu, rng::replicate_seed(seed, r));
    });

    std::vector<double> ws, ls, lts;
    for (const GhostCounts& c : report.per_rep) {
        ws.push_back(static_cast<double>(c.w));
        ls.push_back(static_cast<double>(c.l));
        lts.push_back(static_cast<double>(c.l_tilde));
        if (c.l > c.l_tilde) report.l_le_lt = false;
    }
    report.w_mean = stats::mean(ws);
    report.l_mean = stats::mean(ls);
    report.lt_mean = stats::mean(lts);
    report.w_var = stats::sample_variance(ws);
    report.lt_var = stats::sample_variance(lts);
    report.ratio = report.lt_mean > 0.0 ? report.w_mean / report.lt_mean : 0.0;
    return report;
}

}  // namespace arw
