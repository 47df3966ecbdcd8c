#include <benchmark/benchmark.h>

#include <random>

#include "compute_verify/location.hpp"

using namespace compute_verify;

namespace {

void BM_EstimatePosition(benchmark::State& state) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-300000.0, 300000.0);
    std::vector<ServerSite> sites;
    for (int i = 0; i < static_cast<int>(state.range(0)); ++i)
        sites.push_back({"s" + std::to_string(i), {coord(rng), coord(rng)}});
    const Point2 truth{coord(rng), coord(rng)};
    const auto obs = simulate_rtt(sites, truth, 0.0, 2e8);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_position(sites, obs, 2e8));
}
BENCHMARK(BM_EstimatePosition)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_CheckClaim(benchmark::State& state) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> coord(-300000.0, 300000.0);
    std::vector<ServerSite> sites;
    for (int i = 0; i < 16; ++i)
        sites.push_back({"s" + std::to_string(i), {coord(rng), coord(rng)}});
    const Point2 truth{coord(rng), coord(rng)};
    const auto obs = simulate_rtt(sites, truth, 0.001, 2e8);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_claim(truth, sites, obs, 2e8, 10.0));
}
BENCHMARK(BM_CheckClaim);

}  // namespace
