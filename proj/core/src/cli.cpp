#include "compute_verify/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "compute_verify/accounting.hpp"
#include "compute_verify/bandwidth.hpp"
#include "compute_verify/limits.hpp"
#include "compute_verify/location.hpp"
#include "compute_verify/pow.hpp"
#include "compute_verify/report.hpp"
#include "compute_verify/scenario.hpp"
#include "compute_verify/transcript.hpp"
#include "compute_verify/units.hpp"

namespace compute_verify::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitViolation = 2;

struct CommandResult {
    OrderedJson report;
    int exit_code = kExitOk;
};

double rn(double v) { return report_number(v); }

OrderedJson bandwidth_json(const BandwidthReport& r) {
    OrderedJson j;
    j["regime"] = std::string(regime_name(r.regime));
    j["payload_bytes"] = rn(r.payload_bytes);
    j["interval_s"] = rn(r.interval_s);
    j["per_direction_bytes_per_s"] = rn(r.per_direction_bytes_per_s);
    return j;
}

const PodSpec& primary_pod(const Scenario& s) {
    if (s.pods.empty()) throw SchemaError("scenario: $.pods: missing required field");
    return s.pods.front();
}

const ModelSpec& model_of(const Scenario& s) {
    if (!s.model) throw SchemaError("scenario: $.model: missing required field");
    return *s.model;
}

const BatchSpec& batch_of(const Scenario& s) {
    if (!s.batch) throw SchemaError("scenario: $.batch: missing required field");
    return *s.batch;
}

/// Covert-training bandwidth requirement the limit must defeat: the
/// federated-adjusted data-parallel figure when adjustments are given,
/// otherwise the raw data-parallel one.
double covert_requirement(const Scenario& s, const BandwidthReport& dp) {
    if (s.federated) return federated_bandwidth(dp, *s.federated).per_direction_bytes_per_s;
    return dp.per_direction_bytes_per_s;
}

// ---------------------------------------------------------------------------
// bandwidth
// ---------------------------------------------------------------------------

CommandResult cmd_bandwidth(const Scenario& s) {
    const ModelSpec& model = model_of(s);
    const BatchSpec& batch = batch_of(s);
    const PodSpec& pod = primary_pod(s);

    OrderedJson j;
    j["command"] = "bandwidth";
    j["scenario"] = s.name;
    std::vector<std::string> warnings;
    if (s.pods.size() > 1)
        warnings.push_back("bandwidth analysis uses the first pod entry only");

    j["bits_per_token"] = bits_per_token(model.vocab_size);
    j["batch_compute_time_s"] = rn(batch_compute_time_s(model, batch, pod));
    j["gradient_payload_bytes"] = rn(gradient_payload_bytes(model));

    const BandwidthReport dp = data_parallel_bandwidth(model, batch, pod);
    j["data_parallel"] = bandwidth_json(dp);
    if (s.federated) j["federated"] = bandwidth_json(federated_bandwidth(dp, *s.federated));

    if (s.inference) {
        const auto prefill =
            inference_token_bandwidth(s.inference->prefill_tokens_per_s, s.inference->ref_chips,
                                      pod, model, Regime::inference_prefill);
        const auto decode =
            inference_token_bandwidth(s.inference->decode_tokens_per_s, s.inference->ref_chips,
                                      pod, model, Regime::inference_decode);
        j["inference_prefill"] = bandwidth_json(prefill);
        j["inference_decode"] = bandwidth_json(decode);
        j["gap_ratio"] = rn(dp.per_direction_bytes_per_s / prefill.per_direction_bytes_per_s);
        if (s.inference->ref_chips != pod.n_chips)
            warnings.push_back(
                "inference throughput was scaled linearly per chip from " +
                std::to_string(s.inference->ref_chips) + " to " + std::to_string(pod.n_chips) +
                " chips; throughput per chip likely changes with pod size");
    }

    j["training_tokens"] = bandwidth_json(training_token_bandwidth(model, batch, pod));

    const BandwidthReport pipe = pipeline_activation_bandwidth(model, batch);
    OrderedJson jp = bandwidth_json(pipe);
    const double token_payload_bytes =
        static_cast<double>(batch.seq_len) * static_cast<double>(batch.seqs_per_pod) *
        static_cast<double>(bits_per_token(model.vocab_size)) / 8.0;
    jp["activation_to_token_ratio"] = rn(pipe.payload_bytes / token_payload_bytes);
    j["pipeline"] = std::move(jp);

    if (s.dataset_tokens)
        j["training_duration_days"] =
            rn(training_duration_days(*s.dataset_tokens, batch, model, pod));

    j["warnings"] = warnings;
    if (!s.references.empty()) j["references"] = s.references;
    return {std::move(j), kExitOk};
}

// ---------------------------------------------------------------------------
// limits
// ---------------------------------------------------------------------------

CommandResult cmd_limits(const Scenario& s) {
    if (!s.limits) throw SchemaError("scenario: $.limits: missing required field");
    if (!s.inference) throw SchemaError("scenario: $.inference: missing required field");
    const ModelSpec& model = model_of(s);
    const BatchSpec& batch = batch_of(s);
    const PodSpec& pod = primary_pod(s);

    OrderedJson j;
    j["command"] = "limits";
    j["scenario"] = s.name;
    std::vector<std::string> warnings;

    const BandwidthReport dp = data_parallel_bandwidth(model, batch, pod);
    const auto prefill =
        inference_token_bandwidth(s.inference->prefill_tokens_per_s, s.inference->ref_chips,
                                  pod, model, Regime::inference_prefill);
    const double inference_req = prefill.per_direction_bytes_per_s;
    const double covert_req = covert_requirement(s, dp);
    if (!s.federated)
        warnings.push_back(
            "no federated adjustments given; the covert requirement is the raw "
            "data-parallel figure, which overstates what distributed training needs");

    const LimitRecommendation rec =
        derive_limit(inference_req, covert_req, s.limits->target_slowdown, s.limits->margin);
    j["inference_requirement_bytes_per_s"] = rn(inference_req);
    j["covert_requirement_bytes_per_s"] = rn(covert_req);
    j["target_slowdown"] = rn(s.limits->target_slowdown);
    j["margin"] = rn(s.limits->margin);
    j["limit_per_direction_bytes_per_s"] = rn(rec.limit_per_direction_bytes_per_s);
    j["inference_margin"] = rn(rec.inference_margin);
    j["achieved_slowdown"] = rn(rec.achieved_slowdown);
    j["feasible"] = rec.feasible;
    if (!rec.feasible) {
        j["diagnostic"] = rec.diagnostic;
        warnings.push_back("no interconnect limit satisfies both bounds: " + rec.diagnostic);
    }

    const double weight_bytes = model.params * static_cast<double>(model.weight_bits) / 8.0;
    const double load_s = weight_load_time_s(weight_bytes, rec.limit_per_direction_bytes_per_s);
    j["weight_load"] = {{"model_bytes", rn(weight_bytes)},
                        {"seconds", rn(load_s)},
                        {"days", rn(load_s / kSecondsPerDay)}};

    if (s.limits->burst) {
        try {
            const BurstSchedule sched = burst_plan(weight_bytes, s.limits->burst->high_bw_bytes_per_s,
                                                   s.limits->burst->period_s);
            j["burst"] = {{"period_s", rn(sched.period_s)},
                          {"window_s", rn(sched.window_s)},
                          {"high_bw_bytes_per_s", rn(sched.high_bw_bytes_per_s)}};
        } catch (const ScheduleError& e) {
            j["burst"] = {{"infeasible", true}, {"diagnostic", e.what()}};
            warnings.push_back(e.what());
        }
    }

    if (s.pipeline) {
        const double tps = pipeline_throughput_under_limit(
            rec.limit_per_direction_bytes_per_s, s.pipeline->d_model, s.pipeline->act_bits);
        OrderedJson jp;
        jp["d_model"] = s.pipeline->d_model;
        jp["act_bits"] = s.pipeline->act_bits;
        jp["tokens_per_s_under_limit"] = rn(tps);
        const double allowed = tps * s.pipeline->allowance_factor;
        jp["allowance_factor"] = rn(s.pipeline->allowance_factor);
        jp["tokens_per_s_with_allowance"] = rn(allowed);
        if (s.pipeline->reference_tokens_per_s > 0) {
            jp["reference_tokens_per_s"] = rn(s.pipeline->reference_tokens_per_s);
            jp["slowdown_vs_reference"] = rn(s.pipeline->reference_tokens_per_s / allowed);
        }
        j["pipeline"] = std::move(jp);
    }

    j["warnings"] = warnings;
    if (!s.references.empty()) j["references"] = s.references;
    return {std::move(j), kExitOk};
}

// ---------------------------------------------------------------------------
// account
// ---------------------------------------------------------------------------

CommandResult cmd_account(const Scenario& s) {
    if (!s.ledger) throw SchemaError("scenario: $.ledger: missing required field");
    const LedgerSection& sec = *s.ledger;

    OrderedJson j;
    j["command"] = "account";
    j["scenario"] = s.name;

    const Verdict v = account(sec.ledger, sec.threshold_flop);
    j["window_s"] = rn(sec.ledger.window_s);
    j["recompute_factor"] = rn(sec.ledger.recompute_factor);
    j["total_flop_capacity"] = rn(v.total_flop_capacity);
    j["verified_flop"] = rn(v.verified_flop);
    j["max_covert_flop"] = rn(v.max_covert_flop);
    j["threshold_flop"] = rn(v.threshold);
    j["compliant"] = v.compliant;
    OrderedJson breakdown;
    for (const auto& [method, flop] : v.breakdown) breakdown[method] = rn(flop);
    j["breakdown"] = std::move(breakdown);

    if (sec.measured_watts) {
        OrderedJson jp;
        double expected = 0;
        for (const auto& pod : sec.ledger.pods) expected += pod_power_watts(pod);
        jp["expected_watts"] = rn(expected);
        jp["measured_watts"] = rn(*sec.measured_watts);
        jp["rel_tol"] = rn(sec.power_rel_tol);
        jp["consistent"] =
            power_consistency(sec.ledger.pods, *sec.measured_watts, sec.power_rel_tol);
        j["power"] = std::move(jp);
    }

    if (sec.projection_years) {
        const ThresholdProjection p =
            project_threshold(sec.threshold_flop, *sec.projection_years,
                              sec.alg_rate_per_year, sec.hw_rate_per_year);
        j["projection"] = {{"years", rn(p.years)},
                           {"alg_rate_per_year", rn(sec.alg_rate_per_year)},
                           {"hw_rate_per_year", rn(sec.hw_rate_per_year)},
                           {"projected_threshold_flop", rn(p.projected_threshold_flop)},
                           {"hardware_cost_scale", rn(p.hardware_cost_scale)}};
    }

    int exit_code = v.compliant ? kExitOk : kExitViolation;
    if (j.contains("power") && !j["power"]["consistent"].get<bool>())
        exit_code = kExitViolation;
    return {std::move(j), exit_code};
}

// ---------------------------------------------------------------------------
// transcript
// ---------------------------------------------------------------------------

CommandResult cmd_transcript_record(const Scenario& s) {
    if (!s.transcript) throw SchemaError("scenario: $.transcript: missing required field");
    const Transcript t = train_record(s.transcript->config, s.transcript->digest_only);
    const std::string path = s.resolve(s.transcript->path).string();
    save_transcript(t, path);

    OrderedJson j;
    j["command"] = "transcript-record";
    j["scenario"] = s.name;
    j["path"] = path;
    j["init_hash"] = t.init_hash_hex;
    j["checkpoints"] = t.checkpoints.size();
    j["segments"] = t.segments_total();
    j["final_digest"] = t.checkpoints.back().digest_hex;
    j["digest_only"] = t.digest_only;
    return {std::move(j), kExitOk};
}

CommandResult cmd_transcript_verify(const Scenario& s, std::optional<std::uint64_t> samples,
                                    bool all, std::uint64_t verifier_seed) {
    if (!s.transcript) throw SchemaError("scenario: $.transcript: missing required field");
    const std::string path = s.resolve(s.transcript->path).string();
    const Transcript t = load_transcript(path);

    const std::uint64_t total = t.segments_total();
    std::uint64_t count = all ? total : samples.value_or(std::min<std::uint64_t>(10, total));
    if (count > total)
        throw SpecError("--samples " + std::to_string(count) + " exceeds the " +
                        std::to_string(total) + " segments in the transcript");

    const VerifyReport r = verify(t, count, verifier_seed);

    OrderedJson j;
    j["command"] = "transcript-verify";
    j["scenario"] = s.name;
    j["path"] = path;
    j["verifier_seed"] = verifier_seed;
    j["segments_total"] = r.segments_total;
    j["segments_checked"] = r.segments_checked;
    j["sampled_segments"] = r.sampled_segments;
    j["mismatched_segments"] = r.mismatched_segments;
    j["init_ok"] = r.init_ok;
    j["passed"] = r.passed;
    return {std::move(j), r.passed ? kExitOk : kExitViolation};
}

// ---------------------------------------------------------------------------
// pow
// ---------------------------------------------------------------------------

CommandResult cmd_pow(const Scenario& s) {
    if (!s.pow) throw SchemaError("scenario: $.pow: missing required field");
    OrderedJson j;
    j["command"] = "pow";
    j["scenario"] = s.name;
    std::vector<std::string> warnings;

    bool any_invalid = false;
    double total_confirmed = 0;
    OrderedJson shares = OrderedJson::array();
    std::uint64_t valid_count = 0;
    for (std::size_t i = 0; i < s.pow->shares.size(); ++i) {
        const Share& share = s.pow->shares[i];
        const bool ok = verify_share(share);
        OrderedJson js;
        js["index"] = i;
        js["nonce"] = share.nonce;
        js["difficulty_bits"] = share.difficulty_bits;
        js["valid"] = ok;
        shares.push_back(std::move(js));
        if (ok) {
            ++valid_count;
            total_confirmed += confirmed_work(1, share.difficulty_bits);
        } else {
            any_invalid = true;
            warnings.push_back("share " + std::to_string(i) + " (nonce " +
                               std::to_string(share.nonce) + ") fails the difficulty predicate");
        }
    }
    j["shares"] = std::move(shares);
    j["valid_shares"] = valid_count;
    j["confirmed_work_hashes"] = rn(total_confirmed);

    if (!s.pow->campaigns.empty()) {
        OrderedJson camps = OrderedJson::array();
        for (const auto& c : s.pow->campaigns) {
            const auto found = mine_campaign(c.message, c.difficulty_bits, c.attempts);
            OrderedJson jc;
            jc["difficulty_bits"] = c.difficulty_bits;
            jc["attempts"] = c.attempts;
            jc["shares_found"] = found.size();
            jc["confirmed_work_hashes"] = rn(confirmed_work(found.size(), c.difficulty_bits));
            camps.push_back(std::move(jc));
        }
        j["campaigns"] = std::move(camps);
    }

    if (s.pow->hashes_per_chip_hour) {
        j["equivalent_chip_hours"] = rn(total_confirmed / *s.pow->hashes_per_chip_hour);
        warnings.push_back(
            "equivalent_chip_hours assumes the declared rate of " +
            std::to_string(*s.pow->hashes_per_chip_hour) +
            " hashes per chip-hour; the hash-to-chip-hour mapping is an assumption, "
            "not a measurement");
    }

    j["warnings"] = warnings;
    return {std::move(j), any_invalid ? kExitViolation : kExitOk};
}

// ---------------------------------------------------------------------------
// locate
// ---------------------------------------------------------------------------

CommandResult cmd_locate(const Scenario& s) {
    if (!s.location) throw SchemaError("scenario: $.location: missing required field");
    const LocationSection& sec = *s.location;

    OrderedJson j;
    j["command"] = "locate";
    j["scenario"] = s.name;
    bool any_bad = false;

    OrderedJson cases = OrderedJson::array();
    for (const auto& c : sec.cases) {
        OrderedJson jc;
        jc["id"] = c.id;
        std::vector<RttObservation> obs = c.observations;
        if (c.simulate)
            obs = simulate_rtt(sec.sites, c.simulate->true_position,
                               c.simulate->per_site_delay_s, sec.propagation_speed);

        OrderedJson jo = OrderedJson::array();
        const auto radii = max_distance_bounds(obs, sec.propagation_speed);
        for (std::size_t i = 0; i < obs.size(); ++i)
            jo.push_back({{"site_id", obs[i].site_id},
                          {"rtt_s", rn(obs[i].rtt_s)},
                          {"max_distance_m", rn(radii[i])}});
        jc["observations"] = std::move(jo);

        try {
            const LocationEstimate est =
                estimate_position(sec.sites, obs, sec.propagation_speed, sec.tolerance_m);
            jc["estimate"] = {{"x_m", rn(est.point.x)},
                              {"y_m", rn(est.point.y)},
                              {"residual_m", rn(est.residual_m)},
                              {"consistent", est.consistent}};
        } catch (const GeometryError& e) {
            jc["estimate"] = {{"error", e.what()}};
            any_bad = true;
        }

        if (c.claim) {
            const ClaimVerdict verdict =
                check_claim(*c.claim, sec.sites, obs, sec.propagation_speed, c.slack_m);
            jc["claim"] = {{"x_m", rn(c.claim->x)},
                           {"y_m", rn(c.claim->y)},
                           {"slack_m", rn(c.slack_m)},
                           {"verdict", verdict == ClaimVerdict::spoofed ? "spoofed" : "consistent"}};
            if (verdict == ClaimVerdict::spoofed) any_bad = true;
        }
        cases.push_back(std::move(jc));
    }
    j["cases"] = std::move(cases);
    return {std::move(j), any_bad ? kExitViolation : kExitOk};
}

// ---------------------------------------------------------------------------
// text rendering
// ---------------------------------------------------------------------------

void render_line(std::ostream& out, const std::string& label, const std::string& value,
                 const std::string& reference = {}) {
    out << "  " << std::left << std::setw(34) << label << " " << value;
    if (!reference.empty()) out << "   (reference: " << reference << ")";
    out << "\n";
}

void render_text(const OrderedJson& j, std::ostream& out) {
    const std::string cmd = j.value("command", "");
    out << "== " << cmd;
    if (j.contains("scenario") && !j["scenario"].get<std::string>().empty())
        out << " [" << j["scenario"].get<std::string>() << "]";
    out << " ==\n";

    auto refs = [&](const char* key) -> std::string {
        if (!j.contains("references")) return {};
        const auto& r = j["references"];
        if (!r.contains(key)) return {};
        return r[key].dump();
    };

    if (cmd == "bandwidth") {
        render_line(out, "bits per token", j["bits_per_token"].dump());
        render_line(out, "batch compute time",
                    format_duration(j["batch_compute_time_s"].get<double>()),
                    refs("batch_time_s"));
        render_line(out, "gradient payload",
                    format_bytes(j["gradient_payload_bytes"].get<double>()),
                    refs("gradient_payload_bytes"));
        render_line(out, "data-parallel bandwidth",
                    format_rate(j["data_parallel"]["per_direction_bytes_per_s"].get<double>()),
                    refs("dp_bandwidth_bytes_per_s"));
        if (j.contains("federated"))
            render_line(out, "federated bandwidth",
                        format_rate(j["federated"]["per_direction_bytes_per_s"].get<double>()),
                        refs("federated_bandwidth_bytes_per_s"));
        if (j.contains("inference_prefill")) {
            render_line(out, "inference prefill (download)",
                        format_rate(j["inference_prefill"]["per_direction_bytes_per_s"].get<double>()),
                        refs("prefill_bandwidth_bytes_per_s"));
            render_line(out, "inference decode (upload)",
                        format_rate(j["inference_decode"]["per_direction_bytes_per_s"].get<double>()),
                        refs("decode_bandwidth_bytes_per_s"));
        }
        render_line(out, "training token bandwidth",
                    format_rate(j["training_tokens"]["per_direction_bytes_per_s"].get<double>()),
                    refs("training_token_bandwidth_bytes_per_s"));
        render_line(out, "pipeline payload per batch",
                    format_bytes(j["pipeline"]["payload_bytes"].get<double>()));
        render_line(out, "pipeline/token payload ratio",
                    j["pipeline"]["activation_to_token_ratio"].dump());
        if (j.contains("gap_ratio"))
            render_line(out, "gradient/token gap ratio", j["gap_ratio"].dump(), refs("gap_ratio"));
        if (j.contains("training_duration_days"))
            render_line(out, "training duration",
                        j["training_duration_days"].dump() + " days",
                        refs("training_duration_days"));
    } else if (cmd == "limits") {
        render_line(out, "inference requirement",
                    format_rate(j["inference_requirement_bytes_per_s"].get<double>()));
        render_line(out, "covert training requirement",
                    format_rate(j["covert_requirement_bytes_per_s"].get<double>()));
        render_line(out, "recommended limit/direction",
                    format_rate(j["limit_per_direction_bytes_per_s"].get<double>()),
                    refs("limit_bytes_per_s"));
        render_line(out, "inference margin", j["inference_margin"].dump());
        render_line(out, "achieved slowdown", j["achieved_slowdown"].dump(), refs("slowdown"));
        render_line(out, "feasible", j["feasible"].dump());
        render_line(out, "weight load time",
                    j["weight_load"]["days"].dump() + " days", refs("weight_load_days"));
        if (j.contains("burst")) {
            if (j["burst"].contains("infeasible"))
                render_line(out, "burst window", "infeasible");
            else
                render_line(out, "burst window",
                            format_duration(j["burst"]["window_s"].get<double>()) + " every " +
                                format_duration(j["burst"]["period_s"].get<double>()));
        }
        if (j.contains("pipeline")) {
            render_line(out, "pipeline tokens/s under limit",
                        j["pipeline"]["tokens_per_s_under_limit"].dump(),
                        refs("pipeline_tokens_per_s"));
            if (j["pipeline"].contains("slowdown_vs_reference"))
                render_line(out, "pipeline slowdown vs reference",
                            j["pipeline"]["slowdown_vs_reference"].dump(),
                            refs("pipeline_reference_slowdown"));
        }
    } else if (cmd == "account") {
        render_line(out, "capacity", format_flop(j["total_flop_capacity"].get<double>()));
        render_line(out, "verified", format_flop(j["verified_flop"].get<double>()));
        render_line(out, "max covert", format_flop(j["max_covert_flop"].get<double>()));
        render_line(out, "threshold", format_flop(j["threshold_flop"].get<double>()));
        render_line(out, "compliant", j["compliant"].dump());
        for (const auto& [method, flop] : j["breakdown"].items())
            render_line(out, "  by " + method, format_flop(flop.get<double>()));
        if (j.contains("power")) {
            render_line(out, "expected power",
                        format_power(j["power"]["expected_watts"].get<double>()),
                        refs("expected_power_watts"));
            render_line(out, "measured power",
                        format_power(j["power"]["measured_watts"].get<double>()));
            render_line(out, "power consistent", j["power"]["consistent"].dump());
        }
        if (j.contains("projection")) {
            render_line(out, "projected threshold",
                        format_flop(j["projection"]["projected_threshold_flop"].get<double>()) +
                            " after " + j["projection"]["years"].dump() + " years");
            render_line(out, "hardware cost scale", j["projection"]["hardware_cost_scale"].dump());
        }
    } else if (cmd == "transcript-record") {
        render_line(out, "written to", j["path"].get<std::string>());
        render_line(out, "checkpoints", j["checkpoints"].dump());
        render_line(out, "segments", j["segments"].dump());
        render_line(out, "init hash", j["init_hash"].get<std::string>());
        render_line(out, "final digest", j["final_digest"].get<std::string>());
    } else if (cmd == "transcript-verify") {
        render_line(out, "transcript", j["path"].get<std::string>());
        render_line(out, "segments checked",
                    j["segments_checked"].dump() + " of " + j["segments_total"].dump());
        render_line(out, "init ok", j["init_ok"].dump());
        render_line(out, "mismatched segments", j["mismatched_segments"].dump());
        render_line(out, "passed", j["passed"].dump());
    } else if (cmd == "pow") {
        render_line(out, "valid shares", j["valid_shares"].dump());
        render_line(out, "confirmed work",
                    j["confirmed_work_hashes"].dump() + " hashes");
        if (j.contains("campaigns"))
            for (const auto& c : j["campaigns"])
                render_line(out,
                            "campaign d=" + c["difficulty_bits"].dump(),
                            c["shares_found"].dump() + " shares over " + c["attempts"].dump() +
                                " attempts, confirms " + c["confirmed_work_hashes"].dump());
        if (j.contains("equivalent_chip_hours"))
            render_line(out, "equivalent chip-hours", j["equivalent_chip_hours"].dump());
    } else if (cmd == "locate") {
        for (const auto& c : j["cases"]) {
            out << "  case " << c["id"].get<std::string>() << ":\n";
            if (c["estimate"].contains("error")) {
                render_line(out, "  estimate", c["estimate"]["error"].get<std::string>());
            } else {
                render_line(out, "  estimate",
                            "(" + c["estimate"]["x_m"].dump() + ", " + c["estimate"]["y_m"].dump() +
                                ") m, residual " + c["estimate"]["residual_m"].dump() + " m");
                render_line(out, "  consistent", c["estimate"]["consistent"].dump());
            }
            if (c.contains("claim"))
                render_line(out, "  claim verdict", c["claim"]["verdict"].get<std::string>());
        }
    }

    if (j.contains("warnings"))
        for (const auto& w : j["warnings"])
            out << "  warning: " << w.get<std::string>() << "\n";
}

void emit(const CommandResult& result, const std::string& output_mode, std::ostream& out) {
    if (output_mode == "json") {
        out << result.report.dump(2) << "\n";
    } else {
        render_text(result.report, out);
    }
}

std::optional<std::uint64_t> env_seed_override() {
    const char* env = std::getenv("COMPUTE_VERIFY_SEED");
    if (env == nullptr || *env == '\0') return std::nullopt;
    try {
        return std::stoull(env);
    } catch (const std::exception&) {
        throw SpecError("COMPUTE_VERIFY_SEED must be an unsigned integer");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"compute-verify: workload bandwidth models, interconnect limits, "
                 "compute accounting, transcript replay, proof-of-work and RTT "
                 "location checks, driven by scenario files"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string output_mode = "text";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
        cmd->add_option("--output", output_mode, "output format")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
    };

    CLI::App* bandwidth = app.add_subcommand(
        "bandwidth", "communication requirements per workload for the scenario pod");
    add_common(bandwidth);
    CLI::App* limits = app.add_subcommand(
        "limits", "derive an inter-pod interconnect limit and its side effects");
    add_common(limits);
    CLI::App* account_cmd = app.add_subcommand(
        "account", "chip-hour ledger compliance verdict (exit 2 when covert slack "
                   "reaches the threshold)");
    add_common(account_cmd);

    CLI::App* transcript_cmd =
        app.add_subcommand("transcript", "record or verify a toy training transcript");
    transcript_cmd->require_subcommand(1);
    CLI::App* t_record = transcript_cmd->add_subcommand("record", "run and write the transcript");
    add_common(t_record);
    CLI::App* t_verify = transcript_cmd->add_subcommand(
        "verify", "replay sampled segments against the transcript (exit 2 on mismatch)");
    add_common(t_verify);
    std::uint64_t samples = 0;
    bool verify_all = false;
    std::uint64_t verifier_seed = 0;
    CLI::Option* samples_opt =
        t_verify->add_option("--samples", samples, "number of segments to replay");
    t_verify->add_flag("--all", verify_all, "replay every segment");
    t_verify->add_option("--verifier-seed", verifier_seed,
                         "seed for segment sampling (default 0)");

    CLI::App* pow_cmd = app.add_subcommand(
        "pow", "verify proof-of-work shares and run mining campaigns (exit 2 on "
               "invalid shares)");
    add_common(pow_cmd);
    CLI::App* locate_cmd = app.add_subcommand(
        "locate", "estimate device positions from RTTs and check claims (exit 2 on "
                  "spoofed claims)");
    add_common(locate_cmd);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    try {
        Scenario scenario = load_scenario(scenario_path);
        if (const auto seed = env_seed_override()) override_seeds(scenario, *seed);

        CommandResult result;
        if (bandwidth->parsed()) {
            result = cmd_bandwidth(scenario);
        } else if (limits->parsed()) {
            result = cmd_limits(scenario);
        } else if (account_cmd->parsed()) {
            result = cmd_account(scenario);
        } else if (transcript_cmd->parsed()) {
            if (t_record->parsed()) {
                result = cmd_transcript_record(scenario);
            } else {
                std::optional<std::uint64_t> sample_opt;
                if (samples_opt->count() > 0) sample_opt = samples;
                result = cmd_transcript_verify(scenario, sample_opt, verify_all, verifier_seed);
            }
        } else if (pow_cmd->parsed()) {
            result = cmd_pow(scenario);
        } else if (locate_cmd->parsed()) {
            result = cmd_locate(scenario);
        } else {
            err << "error: no subcommand\n";
            return kExitInputError;
        }
        emit(result, output_mode, out);
        return result.exit_code;
    } catch (const LedgerError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const SchemaError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    args.reserve(static_cast<std::size_t>(argc > 0 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, std::cout, std::cerr);
}

}  // namespace compute_verify::cli
