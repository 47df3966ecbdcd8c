#include <benchmark/benchmark.h>

#include "compute_verify/bandwidth.hpp"
#include "compute_verify/limits.hpp"

using namespace compute_verify;

namespace {

const ModelSpec kModel{405e9, 16384, 128000, 16, 16, 16};
const BatchSpec kBatch{8192, 16, 16e6};

PodSpec pod() {
    PodSpec p;
    p.chip = {989e12, 400e12, 1275};
    p.n_chips = 128;
    return p;
}

void BM_FullLimitDerivation(benchmark::State& state) {
    const PodSpec p = pod();
    for (auto _ : state) {
        const auto dp = data_parallel_bandwidth(kModel, kBatch, p);
        const auto fed = federated_bandwidth(dp, {100, 100});
        const auto prefill =
            inference_token_bandwidth(5000, 16, p, kModel, Regime::inference_prefill);
        const auto rec = derive_limit(prefill.per_direction_bytes_per_s,
                                      fed.per_direction_bytes_per_s, 100, 1.47);
        benchmark::DoNotOptimize(rec);
    }
}
BENCHMARK(BM_FullLimitDerivation);

void BM_PipelineThroughput(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(pipeline_throughput_under_limit(125e3, 5000, 16));
}
BENCHMARK(BM_PipelineThroughput);

}  // namespace
