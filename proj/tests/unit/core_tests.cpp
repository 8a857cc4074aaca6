#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "arw/initial_law.hpp"
#include "arw/instruction_field.hpp"
#include "arw/jumps.hpp"
#include "arw/lattice.hpp"
#include "arw/site_state.hpp"

#include "../helpers/oracles.hpp"

using namespace arw;

TEST_CASE("site state operations") {
    CHECK(plus_one(SiteState::sleeping()) == SiteState::active(2));
    CHECK(plus_one(SiteState::empty()) == SiteState::active(1));
    CHECK(plus_one(SiteState::active(3)) == SiteState::active(4));

    CHECK(minus_one(SiteState::active(1)) == SiteState::empty());
    CHECK(minus_one(SiteState::sleeping()) == SiteState::empty());
    CHECK(minus_one(SiteState::active(5)) == SiteState::active(4));
    CHECK_THROWS_AS(minus_one(SiteState::empty()), not_acceptable);

    CHECK(sleep_apply(SiteState::active(1)) == SiteState::sleeping());
    CHECK(sleep_apply(SiteState::active(2)) == SiteState::active(2));
    CHECK(sleep_apply(SiteState::sleeping()) == SiteState::sleeping());
    CHECK_THROWS_AS(sleep_apply(SiteState::empty()), not_acceptable);

    CHECK(active_count(SiteState::sleeping()) == 0);
    CHECK(active_count(SiteState::active(3)) == 3);
    CHECK(active_count(SiteState::empty()) == 0);

    CHECK(particle_count(SiteState::sleeping()) == 1);
    CHECK(particle_count(SiteState::empty()) == 0);
    CHECK(particle_count(SiteState::active(5)) == 5);
}

TEST_CASE("site state ordering and algebra properties") {
    std::vector<SiteState> states{SiteState::empty(), SiteState::sleeping()};
    for (int n = 1; n <= 10; ++n) states.push_back(SiteState::active(n));

    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j < states.size(); ++j)
            CHECK((states[i] < states[j]) == (i < j));

    for (const SiteState s : states) {
        // order compatibility of plus_one
        for (const SiteState t : states)
            if (s <= t) CHECK(plus_one(s) <= plus_one(t));
        CHECK(particle_count(plus_one(s)) == particle_count(s) + 1);
        if (!s.is_empty()) {
            CHECK(plus_one(minus_one(s)) == minus_one(plus_one(s)));
            CHECK(plus_one(sleep_apply(s)) == sleep_apply(plus_one(s)));
        }
    }

    CHECK_THROWS_AS(plus_one(SiteState::active(2147483647)), state_overflow);
}

TEST_CASE("arena indexing and boundary validation") {
    const Arena arena(2, Box::rect(Site(-2, -1), Site(3, 2), 2), 1, BoundaryMode::frozen);
    CHECK(arena.window_cells() == 6 * 4);
    CHECK(arena.cells() == 8 * 6);
    for (std::int64_t i = 0; i < arena.cells(); ++i)
        CHECK(arena.index_of(arena.site_at(i)) == i);
    CHECK(arena.in_window(Site(3, 2)));
    CHECK(!arena.in_window(Site(4, 2)));
    CHECK(arena.in_storage(Site(4, 3)));

    const Arena torus(1, Box::interval(0, 9), 0, BoundaryMode::torus);
    CHECK(torus.wrap(Site(10)) == Site(0));
    CHECK(torus.wrap(Site(-1)) == Site(9));
    CHECK(torus.wrap(Site(-13)) == Site(7));
    CHECK_THROWS_AS(Arena(1, Box::interval(0, 9), 1, BoundaryMode::torus), std::invalid_argument);
    CHECK_THROWS_AS(Arena(4, Box::interval(0, 1), 0, BoundaryMode::frozen), std::invalid_argument);
    CHECK_THROWS_AS(Arena(1, Box::interval(3, 1), 0, BoundaryMode::frozen), std::invalid_argument);
}

TEST_CASE("jump distribution validation and parsing") {
    const JumpDistribution d = JumpDistribution::directed_1d();
    CHECK(d.nearest_neighbor());
    CHECK(d.drift()[0] == doctest::Approx(1.0));
    CHECK(d.max_range() == 1);

    const JumpDistribution b = JumpDistribution::parse("biased1d:0.9");
    CHECK(b.drift()[0] == doctest::Approx(0.8));

    const JumpDistribution t = JumpDistribution::parse("2:0.5;-1:0.25;1:0.25");
    CHECK(t.max_range() == 2);
    CHECK(!t.nearest_neighbor());
    CHECK(t.drift()[0] == doctest::Approx(1.0));

    const JumpDistribution s2 = JumpDistribution::parse("sym2d");
    CHECK(s2.dim() == 2);
    CHECK(s2.nearest_neighbor());

    CHECK_THROWS(JumpDistribution(1, {{Site(1), 0.5}, {Site(-1), 0.6}}));
    CHECK_THROWS(JumpDistribution(1, {{Site(1), 0.5}, {Site(1), 0.5}}));
    CHECK_THROWS(JumpDistribution(1, {{Site(0), 1.0}}));
    CHECK_THROWS(JumpDistribution(1, {{Site(0, 1), 1.0}}));
}

TEST_CASE("instruction field determinism") {
    const InstructionField field(12345, 1.0, JumpDistribution::symmetric_1d());
    const InstructionField again(12345, 1.0, JumpDistribution::symmetric_1d());
    for (std::uint64_t j = 1; j <= 200; ++j) {
        CHECK(field.at(Site(-7), j) == field.at(Site(-7), j));
        CHECK(field.at(Site(-7), j) == again.at(Site(-7), j));
    }
    // keyed fast path agrees with the public accessor
    const std::uint64_t key = field.site_key(Site(13));
    for (std::uint64_t j = 1; j <= 200; ++j) {
        const Instruction ins = field.at(Site(13), j);
        const int e = field.entry_at_keyed(key, j);
        CHECK(ins.sleep == (e < 0));
    }
    CHECK_THROWS_AS(field.at(Site(0), 0), std::invalid_argument);
}

TEST_CASE("instruction field marginals (chi-square at 1e-3)") {
    const InstructionField field(777, 1.0, JumpDistribution::symmetric_1d());
    const std::uint64_t n = 1'000'000;
    std::uint64_t sleeps = 0, right = 0, left = 0;
    for (std::uint64_t j = 1; j <= n; ++j) {
        const Instruction ins = field.at(Site(4), j);
        if (ins.sleep)
            ++sleeps;
        else if (ins.offset[0] == 1)
            ++right;
        else
            ++left;
    }
    const double nd = static_cast<double>(n);
    const double exp_sleep = nd * 0.5, exp_jump = nd * 0.25;
    double chi2 = (sleeps - exp_sleep) * (sleeps - exp_sleep) / exp_sleep +
                  (right - exp_jump) * (right - exp_jump) / exp_jump +
                  (left - exp_jump) * (left - exp_jump) / exp_jump;
    CHECK(chi2 < testing::chi2_crit_1e3(2));

    // empirical sleep frequency inside the 3-sigma binomial band
    const double p = static_cast<double>(sleeps) / nd;
    CHECK(std::abs(p - 0.5) < 3.0 * std::sqrt(0.25 / nd));
}

TEST_CASE("instruction field lambda=inf is jump-only") {
    const InstructionField field(3, std::numeric_limits<double>::infinity(),
                                 JumpDistribution::symmetric_2d());
    CHECK(field.jump_only());
    for (std::uint64_t j = 1; j <= 2000; ++j) CHECK(!field.at(Site(1, -2), j).sleep);
}

TEST_CASE("instruction field cross-site independence proxy") {
    const InstructionField field(42, 1.0, JumpDistribution::symmetric_1d());
    const std::uint64_t n = 100'000;
    double sx = 0, sy = 0, sxy = 0;
    for (std::uint64_t j = 1; j <= n; ++j) {
        const double a = field.at(Site(0), j).sleep ? 1.0 : 0.0;
        const double b = field.at(Site(1), j).sleep ? 1.0 : 0.0;
        sx += a;
        sy += b;
        sxy += a * b;
    }
    const double nd = static_cast<double>(n);
    const double corr = (sxy / nd - (sx / nd) * (sy / nd)) / 0.25;
    CHECK(std::abs(corr) < 4.0 / std::sqrt(nd));
}

TEST_CASE("initial law sampling") {
    SUBCASE("deterministic counts map onto the window in order") {
        const Arena arena(1, Box::interval(0, 2), 1, BoundaryMode::frozen);
        const Configuration cfg =
            sample_initial(InitialLaw::deterministic({1, 0, 2}), arena, 9);
        CHECK(cfg.at(Site(0)) == SiteState::active(1));
        CHECK(cfg.at(Site(1)) == SiteState::empty());
        CHECK(cfg.at(Site(2)) == SiteState::active(2));
        CHECK(cfg.at(Site(-1)) == SiteState::empty());  // halo stays empty
        CHECK(cfg.at(Site(3)) == SiteState::empty());
    }

    SUBCASE("poisson mean and dispersion") {
        const Arena arena(1, Box::interval(0, 999'999), 0, BoundaryMode::torus);
        const Configuration half = sample_initial(InitialLaw::poisson(0.5), arena, 11);
        const double n = 1e6;
        const double mean = static_cast<double>(half.total_particles()) / n;
        CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(0.5 / n));

        const Configuration one = sample_initial(InitialLaw::poisson(1.0), arena, 12);
        double m = 0, s2 = 0;
        for (std::int64_t i = 0; i < arena.cells(); ++i) m += one.at_index(i).particle_count();
        m /= n;
        for (std::int64_t i = 0; i < arena.cells(); ++i) {
            const double d = one.at_index(i).particle_count() - m;
            s2 += d * d;
        }
        s2 /= (n - 1);
        CHECK(std::abs(s2 / m - 1.0) < 0.01);
    }

    SUBCASE("restriction consistency across nested windows") {
        const InitialLaw law = InitialLaw::poisson(0.8);
        const Arena small(1, Box::centered(8, 1), 1, BoundaryMode::frozen);
        const Arena large(1, Box::centered(32, 1), 1, BoundaryMode::frozen);
        const Configuration a = sample_initial(law, small, 5);
        const Configuration b = sample_initial(law, large, 5);
        for (std::int32_t x = -8; x <= 8; ++x) CHECK(a.at(Site(x)) == b.at(Site(x)));
    }

    SUBCASE("density validation") {
        CHECK_THROWS_AS(InitialLaw::poisson(0.0), invalid_density);
        CHECK_THROWS_AS(InitialLaw::poisson(-1.0), invalid_density);
        CHECK_THROWS_AS(InitialLaw::bernoulli(1.5), invalid_density);
        CHECK_NOTHROW(InitialLaw::bernoulli(1.0));
        CHECK_THROWS_AS(InitialLaw::deterministic({1, -2}), invalid_density);
    }

    SUBCASE("bernoulli marginals") {
        const Arena arena(1, Box::interval(0, 99'999), 0, BoundaryMode::torus);
        const Configuration cfg = sample_initial(InitialLaw::bernoulli(0.3), arena, 21);
        for (std::int64_t i = 0; i < 1000; ++i)
            CHECK(cfg.at_index(i).particle_count() <= 1);
        const double mean = static_cast<double>(cfg.total_particles()) / 1e5;
        CHECK(std::abs(mean - 0.3) < 4.0 * std::sqrt(0.3 * 0.7 / 1e5));
    }
}
