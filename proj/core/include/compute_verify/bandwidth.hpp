#pragma once

#include <string_view>

#include "compute_verify/units.hpp"

namespace compute_verify {

// Closed-form communication-requirement models for the workloads a pod can
// claim: data-parallel training, low-communication (federated) training,
// pipeline-parallel training, and token-level inference.

enum class Regime {
    data_parallel,
    federated,
    pipeline,
    inference_prefill,
    inference_decode,
    training_tokens,
};

std::string_view regime_name(Regime r);

/// Communication requirement of one workload across the pod boundary.
/// per_direction_bytes_per_s == payload_bytes / interval_s whenever
/// interval_s > 0. Per-batch figures with no natural interval (pipeline)
/// carry interval_s == 0 and no rate.
struct BandwidthReport {
    Regime regime = Regime::data_parallel;
    double payload_bytes = 0;
    double interval_s = 0;
    double per_direction_bytes_per_s = 0;
};

/// Sync-frequency and gradient-compression adjustments for DiLoCo-style
/// low-communication training. Both factors >= 1; they stack by product.
struct FederatedAdjustment {
    double inner_steps_factor = 1;
    double compression_factor = 1;

    void validate() const;
    double combined() const { return inner_steps_factor * compression_factor; }
};

/// Wall-clock time for one pod to process one batch, assuming 6 FLOP per
/// token-parameter: tokens * 6 * params / (achieved_flops * n_chips).
double batch_compute_time_s(const ModelSpec& model, const BatchSpec& batch,
                            const PodSpec& pod);

/// Per-direction parameter-server payload per step: params * grad_bits / 8.
double gradient_payload_bytes(const ModelSpec& model);

/// Parameter-server data-parallel baseline: a full gradient copy each
/// direction per batch interval.
BandwidthReport data_parallel_bandwidth(const ModelSpec& model,
                                        const BatchSpec& batch,
                                        const PodSpec& pod);

/// Applies federated adjustments to a data-parallel report: payload shrinks
/// by the compression factor, the sync interval stretches by the inner-steps
/// factor, bandwidth drops by their product.
BandwidthReport federated_bandwidth(const BandwidthReport& dp,
                                    const FederatedAdjustment& adj);

/// Token traffic for inference at a measured throughput, scaled linearly
/// per chip from ref_chips to the pod size. The linear scaling is a known
/// source of error for large pods. regime selects prefill (download) or
/// decode (upload); the formula is direction-agnostic.
BandwidthReport inference_token_bandwidth(double throughput_tokens_per_s,
                                          std::uint64_t ref_chips,
                                          const PodSpec& pod,
                                          const ModelSpec& model,
                                          Regime regime = Regime::inference_prefill);

/// Raw token traffic into a pod during training: batch tokens at
/// bits_per_token, spread over the batch compute time.
BandwidthReport training_token_bandwidth(const ModelSpec& model,
                                         const BatchSpec& batch,
                                         const PodSpec& pod);

/// Activation traffic across one pipeline boundary per batch:
/// 2 * seqs * seq_len * d_model * act_bits/8 (forward activations plus
/// backward gradients). Reported per batch; no rate without a compute time.
BandwidthReport pipeline_activation_bandwidth(const ModelSpec& model,
                                              const BatchSpec& batch);

/// Tokens/s that fit across one pipeline boundary under a byte/s limit:
/// limit * 8 / (act_bits * d_model).
double pipeline_throughput_under_limit(double limit_bytes_per_s,
                                       std::uint64_t d_model, int act_bits);

/// Wall-clock days to train over dataset_tokens at the pod's batch rate.
double training_duration_days(double dataset_tokens, const BatchSpec& batch,
                              const ModelSpec& model, const PodSpec& pod);

}  // namespace compute_verify
