#include <doctest.h>

#include <cmath>
#include <random>

#include "compute_verify/bandwidth.hpp"

using namespace compute_verify;

namespace {

// The worked Llama-3.1-405B configuration the appendix-style table uses.
const ModelSpec kLlama{405e9, 16384, 128000, 16, 16, 16};
const BatchSpec kLlamaBatch{8192, 16, 16e6};

PodSpec llama_pod(std::uint64_t n_chips = 128) {
    PodSpec pod;
    pod.chip = {989e12, 400e12, 1275};
    pod.n_chips = n_chips;
    return pod;
}

ModelSpec tiny_model(double params, int grad_bits = 16) {
    ModelSpec m{params, 1, 256, 16, grad_bits, 16};
    return m;
}

double rel_err(double got, double want) { return std::fabs(got - want) / want; }

}  // namespace

TEST_CASE("batch compute time matches the worked 6.2 s figure") {
    const double t = batch_compute_time_s(kLlama, kLlamaBatch, llama_pod());
    CHECK(t == doctest::Approx(6.2208));
    CHECK(rel_err(t, 6.2) < 0.02);
}

TEST_CASE("batch compute time formula identities") {
    // 1 token, 1 parameter, 6 FLOP/s achieved on one chip: exactly 1 s.
    BatchSpec one{1, 1, 1};
    PodSpec pod;
    pod.chip = {6, 6, 1};
    pod.n_chips = 1;
    CHECK(batch_compute_time_s(tiny_model(1), one, pod) == doctest::Approx(1.0));

    // 1e6 tokens, 1e9 params, 1e14 FLOP/s per chip, 8 chips: 7.5 s.
    BatchSpec big{1000000, 1, 1e6};
    PodSpec pod8;
    pod8.chip = {1e14, 1e14, 1};
    pod8.n_chips = 8;
    CHECK(batch_compute_time_s(tiny_model(1e9), big, pod8) == doctest::Approx(7.5));
}

TEST_CASE("gradient payload is the per-direction parameter-server figure") {
    const double payload = gradient_payload_bytes(kLlama);
    CHECK(payload == doctest::Approx(810e9));
    CHECK(rel_err(payload, 812e9) < 0.01);  // published figure carries rounding

    CHECK(gradient_payload_bytes(tiny_model(1, 8)) == doctest::Approx(1.0));
    CHECK(gradient_payload_bytes(tiny_model(1e9, 32)) == doctest::Approx(4e9));
}

TEST_CASE("data-parallel bandwidth reproduces 131 GB/s each direction") {
    const BandwidthReport dp = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod());
    CHECK(rel_err(dp.per_direction_bytes_per_s, 131e9) < 0.02);
    CHECK(dp.per_direction_bytes_per_s ==
          doctest::Approx(dp.payload_bytes / dp.interval_s));

    // Doubling the chip count halves the batch time and doubles the rate.
    const BandwidthReport dp2 = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod(256));
    CHECK(dp2.per_direction_bytes_per_s ==
          doctest::Approx(2 * dp.per_direction_bytes_per_s));
    CHECK(dp2.payload_bytes == dp.payload_bytes);
}

TEST_CASE("federated adjustment lands on 13.1 MB/s per direction") {
    const BandwidthReport dp = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod());
    const BandwidthReport fed = federated_bandwidth(dp, {100, 100});
    CHECK(rel_err(fed.per_direction_bytes_per_s, 13.1e6) < 0.02);
    CHECK(fed.interval_s == doctest::Approx(dp.interval_s * 100));
    CHECK(fed.payload_bytes == doctest::Approx(dp.payload_bytes / 100));
}

TEST_CASE("federated identity adjustment changes nothing") {
    const BandwidthReport dp = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod());
    const BandwidthReport same = federated_bandwidth(dp, {1, 1});
    CHECK(same.payload_bytes == dp.payload_bytes);
    CHECK(same.interval_s == dp.interval_s);
    CHECK(same.per_direction_bytes_per_s == dp.per_direction_bytes_per_s);
}

TEST_CASE("federated 500x sync / 117x compression case") {
    // Hand oracle: 812 GB / (117 * 500 * 6.2 s), from the published payload
    // and batch-time figures.
    const double oracle = 812e9 / (117.0 * 500.0 * 6.2);
    const BandwidthReport dp = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod());
    const BandwidthReport fed = federated_bandwidth(dp, {500, 117});
    CHECK(rel_err(fed.per_direction_bytes_per_s, oracle) < 0.01);
}

TEST_CASE("federated rejects non-reducing factors and wrong regimes") {
    const BandwidthReport dp = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod());
    CHECK_THROWS_AS(federated_bandwidth(dp, {0.5, 1}), SpecError);
    BandwidthReport wrong = dp;
    wrong.regime = Regime::pipeline;
    CHECK_THROWS_AS(federated_bandwidth(wrong, {2, 2}), SpecError);
}

TEST_CASE("inference token bandwidth: 85 KB/s prefill, 17 KB/s decode") {
    const auto prefill =
        inference_token_bandwidth(5000, 16, llama_pod(), kLlama, Regime::inference_prefill);
    CHECK(prefill.per_direction_bytes_per_s == doctest::Approx(85000.0));

    const auto decode =
        inference_token_bandwidth(1000, 16, llama_pod(), kLlama, Regime::inference_decode);
    CHECK(decode.per_direction_bytes_per_s == doctest::Approx(17000.0));

    // 8 tokens/s on a single chip, byte-sized vocabulary: 8 B/s.
    PodSpec single;
    single.chip = {1e12, 1e12, 100};
    single.n_chips = 1;
    const auto small = inference_token_bandwidth(8, 1, single, tiny_model(1));
    CHECK(small.per_direction_bytes_per_s == doctest::Approx(8.0));
}

TEST_CASE("training token bandwidth: 278 KB per batch, about 45 KB/s") {
    const auto tok = training_token_bandwidth(kLlama, kLlamaBatch, llama_pod());
    CHECK(tok.payload_bytes == doctest::Approx(278528.0));
    CHECK(rel_err(tok.payload_bytes, 278e3) < 0.01);
    CHECK(rel_err(tok.per_direction_bytes_per_s, 45e3) < 0.02);

    // 1 token per batch, 8-bit token, 1 s batch time: 1 B/s.
    BatchSpec one{1, 1, 1};
    PodSpec pod;
    pod.chip = {6, 6, 1};
    pod.n_chips = 1;
    const auto tiny = training_token_bandwidth(tiny_model(1), one, pod);
    CHECK(tiny.per_direction_bytes_per_s == doctest::Approx(1.0));

    // Halving seq_len halves the payload; the rate is payload/interval and
    // both scale with the token count, so the rate stays put.
    BatchSpec half = kLlamaBatch;
    half.seq_len /= 2;
    const auto tok_half = training_token_bandwidth(kLlama, half, llama_pod());
    CHECK(tok_half.payload_bytes == doctest::Approx(tok.payload_bytes / 2));
    CHECK(tok_half.per_direction_bytes_per_s ==
          doctest::Approx(tok.per_direction_bytes_per_s));
}

TEST_CASE("pipeline activation payload dwarfs raw token payload") {
    const auto pipe = pipeline_activation_bandwidth(kLlama, kLlamaBatch);
    const auto tok = training_token_bandwidth(kLlama, kLlamaBatch, llama_pod());
    const double ratio = pipe.payload_bytes / tok.payload_bytes;
    // d_model * act_bits * 2 / bits_per_token = 16384 * 16 * 2 / 17.
    CHECK(ratio == doctest::Approx(30840.47).epsilon(1e-4));
    CHECK(ratio > 1000.0);

    ModelSpec unit{1, 1, 2, 8, 8, 8};
    BatchSpec one{1, 1, 1};
    CHECK(pipeline_activation_bandwidth(unit, one).payload_bytes == doctest::Approx(2.0));

    ModelSpec wider = kLlama;
    wider.d_model *= 2;
    CHECK(pipeline_activation_bandwidth(wider, kLlamaBatch).payload_bytes ==
          doctest::Approx(2 * pipe.payload_bytes));
}

TEST_CASE("pipeline throughput under a byte limit") {
    CHECK(pipeline_throughput_under_limit(125e3, 5000, 16) == doctest::Approx(12.5));
    // A 100x allowance still sits roughly 2080x under the reference rate.
    const double allowed = pipeline_throughput_under_limit(125e3, 5000, 16) * 100;
    CHECK(allowed == doctest::Approx(1250.0));
    CHECK(2.6e6 / allowed == doctest::Approx(2080.0));
    CHECK(pipeline_throughput_under_limit(16, 1, 16) == doctest::Approx(8.0));
}

TEST_CASE("training duration lands near 70 days for the full dataset") {
    const double days = training_duration_days(15.6e12, kLlamaBatch, kLlama, llama_pod());
    CHECK(days == doctest::Approx(70.2));
    CHECK(rel_err(days, 70.0) < 0.02);

    // One global batch taking a day of compute is exactly one day.
    ModelSpec m = tiny_model(14400);
    BatchSpec batch{1000, 1, 1000};
    PodSpec pod;
    pod.chip = {1000, 1000, 1};
    pod.n_chips = 1;
    CHECK(batch_compute_time_s(m, batch, pod) == doctest::Approx(86400.0));
    CHECK(training_duration_days(1000, batch, m, pod) == doctest::Approx(1.0));

    CHECK(training_duration_days(2 * 15.6e12, kLlamaBatch, kLlama, llama_pod()) ==
          doctest::Approx(2 * days));
}

TEST_CASE("gradient/token gap ratio sits near 1.5 million") {
    const auto dp = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod());
    const auto prefill =
        inference_token_bandwidth(5000, 16, llama_pod(), kLlama, Regime::inference_prefill);
    const double gap = dp.per_direction_bytes_per_s / prefill.per_direction_bytes_per_s;
    CHECK(gap >= 1.4e6);
    CHECK(gap <= 1.6e6);
}

TEST_CASE("bandwidth reports are homogeneous in payload and interval") {
    const auto dp = data_parallel_bandwidth(kLlama, kLlamaBatch, llama_pod());
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> factor(1.0, 1e4);
    for (int i = 0; i < 200; ++i) {
        const double freq = factor(rng);
        const double comp = factor(rng);
        const auto fed = federated_bandwidth(dp, {freq, comp});
        CHECK(fed.payload_bytes == doctest::Approx(dp.payload_bytes / comp));
        CHECK(fed.interval_s == doctest::Approx(dp.interval_s * freq));
        CHECK(fed.per_direction_bytes_per_s ==
              doctest::Approx(dp.per_direction_bytes_per_s / (freq * comp)));
    }
}

TEST_CASE("all workload models stay finite and non-negative on random specs") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> params(1.0, 1e13);
    std::uniform_int_distribution<std::uint64_t> dim(1, 100000);
    std::uniform_int_distribution<std::uint64_t> vocab(2, 2000000);
    std::uniform_int_distribution<std::uint64_t> seq(1, 100000);
    std::uniform_int_distribution<std::uint64_t> chips(1, 100000);
    std::uniform_real_distribution<double> flops(1.0, 2e15);
    const int widths[] = {4, 8, 16, 32, 64};
    for (int i = 0; i < 300; ++i) {
        ModelSpec m{params(rng), dim(rng), vocab(rng), widths[i % 5], widths[(i + 1) % 5],
                    widths[(i + 2) % 5]};
        BatchSpec b{seq(rng), static_cast<std::uint64_t>(1 + (i % 64)), 1e30};
        PodSpec p;
        const double achieved = flops(rng);
        p.chip = {achieved * 2, achieved, 1000};
        p.n_chips = chips(rng);

        const auto dp = data_parallel_bandwidth(m, b, p);
        const auto tok = training_token_bandwidth(m, b, p);
        const auto pipe = pipeline_activation_bandwidth(m, b);
        for (const auto& r : {dp, tok, pipe}) {
            CHECK(std::isfinite(r.payload_bytes));
            CHECK(std::isfinite(r.per_direction_bytes_per_s));
            CHECK(r.payload_bytes >= 0);
            CHECK(r.per_direction_bytes_per_s >= 0);
        }
        // Activations dominate raw tokens whenever d_model*act_bits covers
        // the token index width.
        if (static_cast<double>(m.d_model) * m.act_bits >= bits_per_token(m.vocab_size))
            CHECK(pipe.payload_bytes >= tok.payload_bytes);
    }
}
