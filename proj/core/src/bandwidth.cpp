#include "compute_verify/bandwidth.hpp"

#include <cmath>

namespace compute_verify {

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::data_parallel: return "data-parallel";
        case Regime::federated: return "federated";
        case Regime::pipeline: return "pipeline";
        case Regime::inference_prefill: return "inference-prefill";
        case Regime::inference_decode: return "inference-decode";
        case Regime::training_tokens: return "training-tokens";
    }
    return "?";
}

void FederatedAdjustment::validate() const {
    if (!(inner_steps_factor >= 1))
        throw SpecError("FederatedAdjustment.inner_steps_factor must be >= 1");
    if (!(compression_factor >= 1))
        throw SpecError("FederatedAdjustment.compression_factor must be >= 1");
}

double batch_compute_time_s(const ModelSpec& model, const BatchSpec& batch,
                            const PodSpec& pod) {
    model.validate();
    batch.validate();
    pod.validate();
    const double tokens =
        static_cast<double>(batch.seq_len) * static_cast<double>(batch.seqs_per_pod);
    const double pod_flops = pod.chip.achieved_flops * static_cast<double>(pod.n_chips);
    return tokens * kFlopPerTokenParam * model.params / pod_flops;
}

double gradient_payload_bytes(const ModelSpec& model) {
    model.validate();
    return model.params * static_cast<double>(model.grad_bits) / 8.0;
}

BandwidthReport data_parallel_bandwidth(const ModelSpec& model,
                                        const BatchSpec& batch,
                                        const PodSpec& pod) {
    const double payload = gradient_payload_bytes(model);
    const double interval = batch_compute_time_s(model, batch, pod);
    return {Regime::data_parallel, payload, interval, payload / interval};
}

BandwidthReport federated_bandwidth(const BandwidthReport& dp,
                                    const FederatedAdjustment& adj) {
    adj.validate();
    if (dp.regime != Regime::data_parallel)
        throw SpecError("federated_bandwidth expects a data-parallel report");
    BandwidthReport out;
    out.regime = Regime::federated;
    out.payload_bytes = dp.payload_bytes / adj.compression_factor;
    out.interval_s = dp.interval_s * adj.inner_steps_factor;
    out.per_direction_bytes_per_s = dp.per_direction_bytes_per_s / adj.combined();
    return out;
}

BandwidthReport inference_token_bandwidth(double throughput_tokens_per_s,
                                          std::uint64_t ref_chips,
                                          const PodSpec& pod,
                                          const ModelSpec& model, Regime regime) {
    model.validate();
    pod.validate();
    if (!(throughput_tokens_per_s > 0))
        throw SpecError("inference throughput must be > 0");
    if (ref_chips == 0) throw SpecError("ref_chips must be > 0");
    if (regime != Regime::inference_prefill && regime != Regime::inference_decode)
        throw SpecError("inference_token_bandwidth regime must be prefill or decode");
    const double pod_tokens_per_s = throughput_tokens_per_s /
                                    static_cast<double>(ref_chips) *
                                    static_cast<double>(pod.n_chips);
    const double rate = pod_tokens_per_s *
                        static_cast<double>(bits_per_token(model.vocab_size)) / 8.0;
    return {regime, rate, 1.0, rate};
}

BandwidthReport training_token_bandwidth(const ModelSpec& model,
                                         const BatchSpec& batch,
                                         const PodSpec& pod) {
    const double interval = batch_compute_time_s(model, batch, pod);
    const double payload = static_cast<double>(batch.seq_len) *
                           static_cast<double>(batch.seqs_per_pod) *
                           static_cast<double>(bits_per_token(model.vocab_size)) / 8.0;
    return {Regime::training_tokens, payload, interval, payload / interval};
}

BandwidthReport pipeline_activation_bandwidth(const ModelSpec& model,
                                              const BatchSpec& batch) {
    model.validate();
    batch.validate();
    // Forward activations plus backward gradients, per batch. No rate
    // without a compute time; interval_s == 0 marks a per-batch figure.
    const double payload = 2.0 * static_cast<double>(batch.seqs_per_pod) *
                           static_cast<double>(batch.seq_len) *
                           static_cast<double>(model.d_model) *
                           static_cast<double>(model.act_bits) / 8.0;
    return {Regime::pipeline, payload, 0.0, 0.0};
}

double pipeline_throughput_under_limit(double limit_bytes_per_s,
                                       std::uint64_t d_model, int act_bits) {
    if (!(limit_bytes_per_s > 0) || d_model == 0 || act_bits <= 0)
        throw SpecError("pipeline_throughput_under_limit requires positive inputs");
    return limit_bytes_per_s * 8.0 /
           (static_cast<double>(act_bits) * static_cast<double>(d_model));
}

double training_duration_days(double dataset_tokens, const BatchSpec& batch,
                              const ModelSpec& model, const PodSpec& pod) {
    if (!(dataset_tokens > 0)) throw SpecError("dataset_tokens must be > 0");
    const double steps = dataset_tokens / batch.global_batch_tokens;
    return steps * batch_compute_time_s(model, batch, pod) / kSecondsPerDay;
}

}  // namespace compute_verify
