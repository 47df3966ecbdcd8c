#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "compute_verify/accounting.hpp"
#include "compute_verify/bandwidth.hpp"
#include "compute_verify/location.hpp"
#include "compute_verify/pow.hpp"
#include "compute_verify/transcript.hpp"
#include "compute_verify/units.hpp"

namespace compute_verify {

// Scenario files drive every subcommand. JSON with a required
// schema_version; unknown fields are rejected (fail closed). Quantity-valued
// fields accept either a plain number in base units or a string with a unit,
// e.g. "400 Gb/s".

struct BurstRequest {
    double high_bw_bytes_per_s = 0;
    double period_s = 0;
};

struct LimitsRequest {
    double target_slowdown = 100;
    double margin = 1.47;
    std::optional<BurstRequest> burst;
};

struct InferenceData {
    double prefill_tokens_per_s = 0;
    double decode_tokens_per_s = 0;
    std::uint64_t ref_chips = 0;  ///< pod size the throughputs were measured on
};

/// Worked pipeline-parallel check: throughput across one stage boundary
/// under the derived limit, against a reference training throughput.
struct PipelineCase {
    std::uint64_t d_model = 0;
    int act_bits = 16;
    double reference_tokens_per_s = 0;
    double allowance_factor = 1;  ///< e.g. future compression advances
};

struct LedgerSection {
    ChipHourLedger ledger;  ///< pods filled from the scenario pod list
    double threshold_flop = 0;
    std::optional<double> measured_watts;
    double power_rel_tol = 0.10;
    std::optional<double> projection_years;
    double alg_rate_per_year = 3.0;
    double hw_rate_per_year = 1.3;
};

struct TranscriptSection {
    TrainConfig config;
    std::string path;  ///< transcript file, relative to the scenario file
    bool digest_only = false;
};

struct PowCampaign {
    std::vector<std::uint8_t> message;
    int difficulty_bits = 0;
    std::uint64_t attempts = 0;
};

struct PowSection {
    std::vector<Share> shares;        ///< declared shares to verify
    std::vector<PowCampaign> campaigns;  ///< mining demos to run
    /// Declared mining rate used to translate confirmed work into an
    /// equivalent chip-hours figure. An assumption, and labeled as such in
    /// reports; the hash-to-chip-hour mapping is not standardized.
    std::optional<double> hashes_per_chip_hour;
};

struct LocationSimulation {
    Point2 true_position;
    std::vector<double> per_site_delay_s;  ///< one entry, or one per site
};

struct LocationCase {
    std::string id;
    /// Either measured observations or a simulation that generates them.
    std::vector<RttObservation> observations;
    std::optional<LocationSimulation> simulate;
    std::optional<Point2> claim;
    double slack_m = 0;
};

struct LocationSection {
    double propagation_speed = kDefaultPropagationSpeed;
    double tolerance_m = 1e-3;
    std::vector<ServerSite> sites;
    std::vector<LocationCase> cases;
};

struct Scenario {
    int schema_version = 1;
    std::string name;

    std::optional<ModelSpec> model;
    std::vector<PodSpec> pods;
    std::optional<BatchSpec> batch;
    std::optional<FederatedAdjustment> federated;
    std::optional<LimitsRequest> limits;
    std::optional<double> dataset_tokens;
    std::optional<InferenceData> inference;
    std::optional<PipelineCase> pipeline;
    std::optional<LedgerSection> ledger;
    std::optional<TranscriptSection> transcript;
    std::optional<PowSection> pow;
    std::optional<LocationSection> location;

    /// Published figures to print alongside computed values (known keys
    /// only); golden tests are data, not code.
    std::map<std::string, double> references;

    std::filesystem::path base_dir;  ///< directory of the scenario file

    /// Resolves a file reference against base_dir.
    std::filesystem::path resolve(const std::string& relative) const;
};

/// Parses and validates a scenario. Throws SchemaError naming the JSON path
/// of the offending field.
Scenario load_scenario(const std::filesystem::path& file);
Scenario scenario_from_json_text(const std::string& text,
                                 const std::filesystem::path& base_dir);

/// Applies a COMPUTE_VERIFY_SEED-style override to every RNG seed the
/// scenario carries (transcript init seed; data seed gets value + 1).
void override_seeds(Scenario& s, std::uint64_t value);

}  // namespace compute_verify
