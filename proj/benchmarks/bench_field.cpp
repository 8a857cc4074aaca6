#include <benchmark/benchmark.h>

#include "arw/initial_law.hpp"
#include "arw/instruction_field.hpp"

using namespace arw;

namespace {

void bm_instruction_at(benchmark::State& state) {
    const InstructionField field(99, 1.0, JumpDistribution::symmetric_2d());
    const std::uint64_t key = field.site_key(Site(12, -7));
    std::uint64_t j = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(field.entry_at_keyed(key, j++));
    }
    state.SetItemsProcessed(state.iterations());
}

void bm_poisson_window(benchmark::State& state) {
    const std::int32_t radius = static_cast<std::int32_t>(state.range(0));
    const Arena arena(1, Box::centered(radius, 1), 1, BoundaryMode::frozen);
    const InitialLaw law = InitialLaw::poisson(1.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        const Configuration cfg = sample_initial(law, arena, seed++);
        benchmark::DoNotOptimize(cfg.total_particles());
    }
    state.SetItemsProcessed(state.iterations() * (2 * radius + 1));
}

}  // namespace

BENCHMARK(bm_instruction_at);
BENCHMARK(bm_poisson_window)->Arg(4096)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
