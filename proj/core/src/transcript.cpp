#include "compute_verify/transcript.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "compute_verify/rng.hpp"

namespace compute_verify {

namespace {

// One synthetic sample. The data stream is a single splitmix64 sequence
// seeded with data.seed: draws [0, dim) are the teacher weights, step t
// consumes draws [dim*(t+1), dim*(t+2)).
struct Sample {
    std::vector<double> x;
    double y = 0;
};

std::vector<double> teacher_weights(const TrainConfig& cfg) {
    SplitMix64 gen(cfg.data.seed);
    std::vector<double> theta(cfg.dim);
    for (auto& t : theta) t = gen.uniform_sym();
    return theta;
}

Sample sample_at(const TrainConfig& cfg, const std::vector<double>& theta,
                 std::uint64_t step) {
    SplitMix64 gen = SplitMix64::at_offset(cfg.data.seed, cfg.dim * (step + 1));
    Sample s;
    s.x.resize(cfg.dim);
    for (auto& xi : s.x) xi = gen.uniform_sym();
    double y = 0.0;
    for (std::uint64_t j = 0; j < cfg.dim; ++j) y = y + theta[j] * s.x[j];
    s.y = y;
    return s;
}

Digest weights_digest(const std::vector<double>& w) {
    Sha256 h;
    for (double v : w) h.update_f64(v);
    return h.finish();
}

// Advances weights in place by one SGD step on the step's sample.
// Throws TrainingDivergedError on non-finite loss.
void sgd_step(const TrainConfig& cfg, const std::vector<double>& theta,
              std::vector<double>& w, std::uint64_t step) {
    const Sample s = sample_at(cfg, theta, step);
    double pred = 0.0;
    for (std::uint64_t j = 0; j < cfg.dim; ++j) pred = pred + w[j] * s.x[j];
    const double err = pred - s.y;
    if (!std::isfinite(err * err))
        throw TrainingDivergedError("training diverged: non-finite loss at step " +
                                        std::to_string(step),
                                    step);
    for (std::uint64_t j = 0; j < cfg.dim; ++j) w[j] = w[j] - (cfg.lr * err) * s.x[j];
}

Digest segment_data_digest(const TrainConfig& cfg, const std::vector<double>& theta,
                           std::uint64_t segment_index) {
    Sha256 h;
    const std::uint64_t first = segment_index * cfg.checkpoint_every;
    for (std::uint64_t t = first; t < first + cfg.checkpoint_every; ++t) {
        const Sample s = sample_at(cfg, theta, t);
        for (double xi : s.x) h.update_f64(xi);
        h.update_f64(s.y);
    }
    return h.finish();
}

}  // namespace

void TrainConfig::validate() const {
    if (dim == 0) throw SpecError("TrainConfig.dim must be > 0");
    if (steps == 0) throw SpecError("TrainConfig.steps must be > 0");
    if (checkpoint_every == 0 || steps % checkpoint_every != 0)
        throw SpecError("TrainConfig.checkpoint_every must divide steps");
    if (!(lr >= 0)) throw SpecError("TrainConfig.lr must be >= 0");
}

void Transcript::validate() const {
    config.validate();
    const std::uint64_t expected = config.segments() + 1;
    if (checkpoints.size() != expected)
        throw TranscriptError("transcript has " + std::to_string(checkpoints.size()) +
                              " checkpoints, expected " + std::to_string(expected));
    if (data_segment_hashes.size() != config.segments())
        throw TranscriptError("transcript has " + std::to_string(data_segment_hashes.size()) +
                              " data segment hashes, expected " +
                              std::to_string(config.segments()));
    if (checkpoints.front().step != 0 || checkpoints.front().digest_hex != init_hash_hex)
        throw TranscriptError("first checkpoint must be step 0 with the init digest");
    for (std::size_t i = 1; i < checkpoints.size(); ++i) {
        if (checkpoints[i].step != i * config.checkpoint_every)
            throw TranscriptError("checkpoint steps must increase by checkpoint_every");
    }
}

std::vector<double> init_weights(std::uint64_t seed, std::uint64_t dim) {
    if (dim == 0) throw SpecError("init_weights requires dim > 0");
    SplitMix64 gen(seed);
    std::vector<double> w(dim);
    for (auto& wi : w) wi = gen.uniform_sym();
    return w;
}

Transcript train_record(const TrainConfig& config, bool digest_only) {
    config.validate();
    const std::vector<double> theta = teacher_weights(config);

    Transcript t;
    t.config = config;
    t.digest_only = digest_only;

    std::vector<double> w = init_weights(config.seed, config.dim);
    t.init_hash_hex = to_hex(weights_digest(w));

    auto push_checkpoint = [&](std::uint64_t step) {
        Checkpoint cp;
        cp.step = step;
        cp.digest_hex = to_hex(weights_digest(w));
        if (!digest_only) cp.weights = w;
        t.checkpoints.push_back(std::move(cp));
    };

    push_checkpoint(0);
    for (std::uint64_t step = 0; step < config.steps; ++step) {
        sgd_step(config, theta, w, step);
        if ((step + 1) % config.checkpoint_every == 0) push_checkpoint(step + 1);
    }

    t.data_segment_hashes.reserve(config.segments());
    for (std::uint64_t seg = 0; seg < config.segments(); ++seg)
        t.data_segment_hashes.push_back(to_hex(segment_data_digest(config, theta, seg)));

    t.validate();
    return t;
}

bool rerun_segment(const Transcript& transcript, std::uint64_t segment_index) {
    transcript.validate();
    if (segment_index >= transcript.segments_total())
        throw SpecError("segment index out of range");
    const TrainConfig& cfg = transcript.config;
    const Checkpoint& start = transcript.checkpoints[segment_index];
    const Checkpoint& end = transcript.checkpoints[segment_index + 1];
    if (start.weights.size() != cfg.dim)
        throw TranscriptError("checkpoint " + std::to_string(segment_index) +
                              " carries no weights; cannot replay a digest-only transcript");

    const std::vector<double> theta = teacher_weights(cfg);

    // The declared data for this segment must match what the declared seed
    // actually generates; a transcript pointing at other data fails here.
    const Digest data_digest = segment_data_digest(cfg, theta, segment_index);
    if (to_hex(data_digest) != transcript.data_segment_hashes[segment_index]) return false;

    std::vector<double> w = start.weights;
    const std::uint64_t first = segment_index * cfg.checkpoint_every;
    for (std::uint64_t t = first; t < first + cfg.checkpoint_every; ++t)
        sgd_step(cfg, theta, w, t);

    return to_hex(weights_digest(w)) == end.digest_hex;
}

VerifyReport verify(const Transcript& transcript, std::uint64_t sample_count,
                    std::uint64_t verifier_seed) {
    transcript.validate();
    const std::uint64_t n = transcript.segments_total();
    if (sample_count > n)
        throw SpecError("sample_count exceeds the number of segments");

    VerifyReport report;
    report.segments_total = n;

    const std::vector<double> reference =
        init_weights(transcript.config.seed, transcript.config.dim);
    report.init_ok = to_hex(weights_digest(reference)) == transcript.init_hash_hex;

    // Partial Fisher-Yates over segment indices, driven by the verifier
    // seed: deterministic and uniform over distinct segments.
    std::vector<std::uint64_t> indices(n);
    for (std::uint64_t i = 0; i < n; ++i) indices[i] = i;
    SplitMix64 gen(verifier_seed);
    for (std::uint64_t i = 0; i < sample_count; ++i) {
        const std::uint64_t j = i + gen.next() % (n - i);
        std::swap(indices[i], indices[j]);
    }
    indices.resize(sample_count);
    std::sort(indices.begin(), indices.end());
    report.sampled_segments = indices;

    for (std::uint64_t seg : indices) {
        ++report.segments_checked;
        if (!rerun_segment(transcript, seg)) report.mismatched_segments.push_back(seg);
    }
    report.passed = report.init_ok && report.mismatched_segments.empty();
    return report;
}

double detection_probability(std::uint64_t n_segments, std::uint64_t n_tampered,
                             std::uint64_t n_sampled) {
    if (n_tampered > n_segments || n_sampled > n_segments)
        throw SpecError("detection_probability requires n_tampered, n_sampled <= n_segments");
    if (n_tampered == 0) return 0.0;
    if (n_sampled > n_segments - n_tampered) return 1.0;

    // 1 - C(n-t, s)/C(n, s) = 1 - prod_{i=0}^{s-1} (n-t-i)/(n-i), exactly.
    namespace mp = boost::multiprecision;
    mp::cpp_int num = 1;
    mp::cpp_int den = 1;
    for (std::uint64_t i = 0; i < n_sampled; ++i) {
        num *= n_segments - n_tampered - i;
        den *= n_segments - i;
    }
    const mp::cpp_rational miss(num, den);
    return 1.0 - static_cast<double>(miss);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

using Json = nlohmann::ordered_json;

std::string f64_to_hex(double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    std::uint8_t le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<std::uint8_t>((bits >> (8 * i)) & 0xFF);
    return to_hex(std::span<const std::uint8_t>(le, 8));
}

double f64_from_hex(const std::string& hex) {
    const auto bytes = from_hex(hex);
    if (bytes.size() != 8) throw TranscriptError("weight entry is not 8 bytes");
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | bytes[static_cast<std::size_t>(i)];
    return std::bit_cast<double>(bits);
}

}  // namespace

std::string to_json(const Transcript& t) {
    Json j;
    j["transcript_version"] = t.transcript_version;
    j["config"] = {
        {"seed", t.config.seed},
        {"dim", t.config.dim},
        {"steps", t.config.steps},
        {"checkpoint_every", t.config.checkpoint_every},
        {"lr", t.config.lr},
        {"data_seed", t.config.data.seed},
    };
    j["digest_only"] = t.digest_only;
    j["init_hash"] = t.init_hash_hex;
    j["checkpoints"] = Json::array();
    for (const auto& cp : t.checkpoints) {
        Json jc;
        jc["step"] = cp.step;
        jc["digest"] = cp.digest_hex;
        Json weights = Json::array();
        for (double w : cp.weights) weights.push_back(f64_to_hex(w));
        jc["weights"] = std::move(weights);
        j["checkpoints"].push_back(std::move(jc));
    }
    j["data_segment_hashes"] = t.data_segment_hashes;
    return j.dump(2) + "\n";
}

Transcript transcript_from_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw TranscriptError(std::string("transcript is not valid JSON: ") + e.what());
    }
    try {
        Transcript t;
        t.transcript_version = j.at("transcript_version").get<int>();
        if (t.transcript_version != 1)
            throw TranscriptError("unsupported transcript_version " +
                                  std::to_string(t.transcript_version));
        const auto& jc = j.at("config");
        t.config.seed = jc.at("seed").get<std::uint64_t>();
        t.config.dim = jc.at("dim").get<std::uint64_t>();
        t.config.steps = jc.at("steps").get<std::uint64_t>();
        t.config.checkpoint_every = jc.at("checkpoint_every").get<std::uint64_t>();
        t.config.lr = jc.at("lr").get<double>();
        t.config.data.seed = jc.at("data_seed").get<std::uint64_t>();
        t.digest_only = j.at("digest_only").get<bool>();
        t.init_hash_hex = j.at("init_hash").get<std::string>();
        for (const auto& jcp : j.at("checkpoints")) {
            Checkpoint cp;
            cp.step = jcp.at("step").get<std::uint64_t>();
            cp.digest_hex = jcp.at("digest").get<std::string>();
            for (const auto& w : jcp.at("weights"))
                cp.weights.push_back(f64_from_hex(w.get<std::string>()));
            t.checkpoints.push_back(std::move(cp));
        }
        for (const auto& h : j.at("data_segment_hashes"))
            t.data_segment_hashes.push_back(h.get<std::string>());
        t.validate();
        return t;
    } catch (const Json::exception& e) {
        throw TranscriptError(std::string("malformed transcript: ") + e.what());
    }
}

void save_transcript(const Transcript& t, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw TranscriptError("cannot open '" + path + "' for writing");
    out << to_json(t);
    if (!out) throw TranscriptError("failed writing transcript to '" + path + "'");
}

Transcript load_transcript(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TranscriptError("cannot open transcript file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return transcript_from_json(buf.str());
}

}  // namespace compute_verify
