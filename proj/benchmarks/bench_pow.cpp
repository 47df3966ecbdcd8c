#include <benchmark/benchmark.h>

#include <string>

#include "compute_verify/pow.hpp"

using namespace compute_verify;

namespace {

std::vector<std::uint8_t> message() {
    const std::string s = "bench-message";
    return {s.begin(), s.end()};
}

void BM_Mine(benchmark::State& state) {
    const auto msg = message();
    const int difficulty = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mine(msg, difficulty, 1ULL << 30));
}
BENCHMARK(BM_Mine)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_VerifyShare(benchmark::State& state) {
    const auto share = mine(message(), 12, 1ULL << 30);
    for (auto _ : state) benchmark::DoNotOptimize(verify_share(*share));
}
BENCHMARK(BM_VerifyShare);

void BM_HashThroughput(benchmark::State& state) {
    const auto msg = message();
    for (auto _ : state)
        benchmark::DoNotOptimize(mine_campaign(msg, 64, 4096));  // never finds one
    state.SetItemsProcessed(state.iterations() * 4096);
}
BENCHMARK(BM_HashThroughput);

}  // namespace
