#include <benchmark/benchmark.h>

#include "compute_verify/transcript.hpp"

using namespace compute_verify;

namespace {

TrainConfig config(std::uint64_t steps, std::uint64_t every, std::uint64_t dim) {
    TrainConfig cfg;
    cfg.seed = 7;
    cfg.dim = dim;
    cfg.steps = steps;
    cfg.checkpoint_every = every;
    cfg.lr = 0.05;
    cfg.data.seed = 99;
    return cfg;
}

void BM_TrainRecord(benchmark::State& state) {
    const auto cfg = config(static_cast<std::uint64_t>(state.range(0)), 25, 16);
    for (auto _ : state) benchmark::DoNotOptimize(train_record(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainRecord)->Arg(100)->Arg(1000)->Arg(10000);

void BM_RerunSegment(benchmark::State& state) {
    const Transcript t = train_record(config(1000, 25, 16));
    std::uint64_t seg = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rerun_segment(t, seg));
        seg = (seg + 1) % t.segments_total();
    }
}
BENCHMARK(BM_RerunSegment);

void BM_SampledVerify(benchmark::State& state) {
    const Transcript t = train_record(config(1000, 25, 16));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(verify(t, 10, seed++));
}
BENCHMARK(BM_SampledVerify);

}  // namespace
