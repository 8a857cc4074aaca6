#include <benchmark/benchmark.h>

#include "arw/engine.hpp"
#include "arw/soc.hpp"

using namespace arw;

namespace {

void stabilize_case(benchmark::State& state, int dim, const JumpDistribution& jumps, double mu,
                    double lambda, const TopplingPolicy& policy) {
    const std::int32_t radius = static_cast<std::int32_t>(state.range(0));
    const Arena arena(dim, Box::centered(radius, dim), jumps.max_range(), BoundaryMode::frozen);
    const InitialLaw law = InitialLaw::poisson(mu);
    std::uint64_t seed = 1;
    std::uint64_t topplings = 0;
    for (auto _ : state) {
        state.PauseTiming();
        const InstructionField field(seed, lambda, jumps);
        Configuration cfg = sample_initial(law, arena, seed);
        ++seed;
        state.ResumeTiming();
        const StabilizationResult r =
            stabilize(std::move(cfg), field, policy, 1'000'000'000ull);
        benchmark::DoNotOptimize(r.topplings_total);
        topplings += r.topplings_total;
    }
    state.counters["topplings/s"] =
        benchmark::Counter(static_cast<double>(topplings), benchmark::Counter::kIsRate);
}

void bm_directed_subcritical_fifo(benchmark::State& state) {
    stabilize_case(state, 1, JumpDistribution::directed_1d(), 0.4, 1.0, TopplingPolicy::fifo());
}

void bm_directed_subcritical_sweep(benchmark::State& state) {
    stabilize_case(state, 1, JumpDistribution::directed_1d(), 0.4, 1.0, TopplingPolicy::sweep());
}

void bm_symmetric_1d_fifo(benchmark::State& state) {
    stabilize_case(state, 1, JumpDistribution::symmetric_1d(), 0.3, 1.0, TopplingPolicy::fifo());
}

void bm_symmetric_2d_fifo(benchmark::State& state) {
    stabilize_case(state, 2, JumpDistribution::symmetric_2d(), 0.3, 1.0, TopplingPolicy::fifo());
}

void bm_soc_additions(benchmark::State& state) {
    SocParams p;
    p.side = static_cast<std::int32_t>(state.range(0));
    p.additions = 2000;
    p.sample_every = 1000;
    std::uint64_t seed = 7;
    for (auto _ : state) {
        const SocTrace t = soc_run(p, JumpDistribution::directed_1d(), seed++);
        benchmark::DoNotOptimize(t.dissipated);
    }
    state.counters["additions/s"] = benchmark::Counter(
        static_cast<double>(p.additions) * static_cast<double>(state.iterations()),
        benchmark::Counter::kIsRate);
}

}  // namespace

BENCHMARK(bm_directed_subcritical_fifo)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_directed_subcritical_sweep)->Arg(4096)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_symmetric_1d_fifo)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_symmetric_2d_fifo)->Arg(48)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_soc_additions)->Arg(1024)->Unit(benchmark::kMillisecond);
