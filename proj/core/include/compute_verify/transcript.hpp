#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compute_verify/digest.hpp"
#include "compute_verify/errors.hpp"

namespace compute_verify {

// Deterministic toy training runs and their segment-replay verification.
//
// The model is linear regression trained by SGD, one synthetic sample per
// step, all operations in fixed ascending index order, 64-bit floats. Two
// runs of the same config are bit-identical on any IEEE754 platform (the
// build disables FP contraction for this library), which is what makes the
// bit-exact replay comparison below possible.
//
// Streams (see SplitMix64 in rng.hpp for the exact generator):
//   init weights   w[j] = uniform_sym, generator seeded with config.seed
//   teacher        theta[j] = uniform_sym, data stream draws [0, dim)
//   sample step t  x[j] = uniform_sym, data stream draws [dim*(t+1), dim*(t+2));
//                  y = sum_j theta[j]*x[j], accumulated left to right
//   SGD step       err = pred - y; w[j] -= (lr*err)*x[j], j ascending
//
// Digests are SHA-256 over the canonical little-endian 8-byte serialization
// of the values in index order.

struct DataSpec {
    std::uint64_t seed = 0;  ///< seeds the synthetic data stream

    bool operator==(const DataSpec&) const = default;
};

struct TrainConfig {
    std::uint64_t seed = 0;  ///< seeds the weight initialization
    std::uint64_t dim = 0;
    std::uint64_t steps = 0;
    std::uint64_t checkpoint_every = 0;
    double lr = 0;
    DataSpec data;

    void validate() const;
    std::uint64_t segments() const { return steps / checkpoint_every; }

    bool operator==(const TrainConfig&) const = default;
};

struct Checkpoint {
    std::uint64_t step = 0;
    std::string digest_hex;
    /// Full weights at desk scale; empty in digest-only transcripts.
    std::vector<double> weights;
};

struct Transcript {
    int transcript_version = 1;
    TrainConfig config;
    std::string init_hash_hex;
    std::vector<Checkpoint> checkpoints;         ///< steps 0, k, 2k, ..., steps
    std::vector<std::string> data_segment_hashes;  ///< one per inter-checkpoint segment
    bool digest_only = false;

    std::uint64_t segments_total() const { return data_segment_hashes.size(); }
    void validate() const;
};

struct VerifyReport {
    std::uint64_t segments_total = 0;
    std::uint64_t segments_checked = 0;
    std::vector<std::uint64_t> mismatched_segments;
    std::vector<std::uint64_t> sampled_segments;
    bool init_ok = false;
    bool passed = false;
};

/// Deterministic initial weights: same (seed, dim) is bit-identical always.
std::vector<double> init_weights(std::uint64_t seed, std::uint64_t dim);

/// Runs the toy training loop and records the full transcript.
/// Throws TrainingDivergedError (with the step index) on non-finite loss.
Transcript train_record(const TrainConfig& config, bool digest_only = false);

/// Replays segment_index from its starting checkpoint and compares, bit
/// exactly, the replayed weight digest against the next checkpoint and the
/// regenerated data segment hash against the declared one.
/// Throws TranscriptError when the starting checkpoint has no weights.
bool rerun_segment(const Transcript& transcript, std::uint64_t segment_index);

/// Re-derives the initialization and replays sample_count distinct segments
/// chosen uniformly by verifier_seed. Deterministic given verifier_seed.
VerifyReport verify(const Transcript& transcript, std::uint64_t sample_count,
                    std::uint64_t verifier_seed);

/// Detection probability of sampling verification:
/// 1 - C(n_segments - n_tampered, n_sampled) / C(n_segments, n_sampled),
/// evaluated with exact rational arithmetic.
double detection_probability(std::uint64_t n_segments, std::uint64_t n_tampered,
                             std::uint64_t n_sampled);

// Versioned JSON transcript file: hex digests, weights as base-16 IEEE754
// bit patterns (little-endian byte order) so nothing depends on decimal
// float formatting.
std::string to_json(const Transcript& t);
Transcript transcript_from_json(const std::string& text);
void save_transcript(const Transcript& t, const std::string& path);
Transcript load_transcript(const std::string& path);

}  // namespace compute_verify
