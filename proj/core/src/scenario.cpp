#include "compute_verify/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace compute_verify {

namespace {

using Json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError("scenario: " + path + ": " + what);
}

// Fail closed: a verification tool should not guess at fields it does not
// understand.
void check_keys(const Json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key)) fail(path + "." + key, "unknown field");
}

const Json& require(const Json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(path + "." + key, "missing required field");
    return *it;
}

double number(const Json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

std::uint64_t uinteger(const Json& v, const std::string& path) {
    if (!v.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

// Quantity-valued field: plain number in base units, or "125 KB/s".
double quantity(const Json& v, const std::string& path, Dimension dim) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        try {
            const Quantity q = parse_quantity(v.get<std::string>());
            if (q.unit.dim != dim)
                fail(path, "expected a " + std::string(dimension_name(dim)) + " quantity");
            return q.in_base();
        } catch (const UnitError& e) {
            fail(path, e.what());
        }
    }
    fail(path, "expected a number or a quantity string");
}

ModelSpec parse_model(const Json& j, const std::string& path) {
    check_keys(j, path,
               {"params", "d_model", "vocab_size", "weight_bits", "grad_bits", "act_bits"});
    ModelSpec m;
    m.params = number(require(j, path, "params"), path + ".params");
    m.d_model = uinteger(require(j, path, "d_model"), path + ".d_model");
    m.vocab_size = uinteger(require(j, path, "vocab_size"), path + ".vocab_size");
    m.weight_bits = static_cast<int>(uinteger(require(j, path, "weight_bits"), path + ".weight_bits"));
    m.grad_bits = static_cast<int>(uinteger(require(j, path, "grad_bits"), path + ".grad_bits"));
    m.act_bits = static_cast<int>(uinteger(require(j, path, "act_bits"), path + ".act_bits"));
    return m;
}

PodSpec parse_pod(const Json& j, const std::string& path) {
    check_keys(j, path, {"chip", "n_chips", "inter_pod_limit"});
    const Json& jc = require(j, path, "chip");
    const std::string cpath = path + ".chip";
    check_keys(jc, cpath, {"peak_flops", "achieved_flops", "power_watts"});
    PodSpec p;
    p.chip.achieved_flops =
        quantity(require(jc, cpath, "achieved_flops"), cpath + ".achieved_flops",
                 Dimension::compute_rate);
    p.chip.peak_flops = jc.contains("peak_flops")
                            ? quantity(jc["peak_flops"], cpath + ".peak_flops",
                                       Dimension::compute_rate)
                            : p.chip.achieved_flops;
    p.chip.power_watts = jc.contains("power_watts")
                             ? quantity(jc["power_watts"], cpath + ".power_watts",
                                        Dimension::power)
                             : kDefaultChipPowerWatts;
    p.n_chips = uinteger(require(j, path, "n_chips"), path + ".n_chips");
    if (j.contains("inter_pod_limit"))
        p.inter_pod_limit =
            quantity(j["inter_pod_limit"], path + ".inter_pod_limit", Dimension::data_rate);
    return p;
}

BatchSpec parse_batch(const Json& j, const std::string& path) {
    check_keys(j, path, {"seq_len", "seqs_per_pod", "global_batch_tokens"});
    BatchSpec b;
    b.seq_len = uinteger(require(j, path, "seq_len"), path + ".seq_len");
    b.seqs_per_pod = uinteger(require(j, path, "seqs_per_pod"), path + ".seqs_per_pod");
    b.global_batch_tokens =
        number(require(j, path, "global_batch_tokens"), path + ".global_batch_tokens");
    return b;
}

FederatedAdjustment parse_federated(const Json& j, const std::string& path) {
    check_keys(j, path, {"inner_steps_factor", "compression_factor"});
    FederatedAdjustment f;
    f.inner_steps_factor =
        number(require(j, path, "inner_steps_factor"), path + ".inner_steps_factor");
    f.compression_factor =
        number(require(j, path, "compression_factor"), path + ".compression_factor");
    return f;
}

LimitsRequest parse_limits(const Json& j, const std::string& path) {
    check_keys(j, path, {"target_slowdown", "margin", "burst"});
    LimitsRequest r;
    r.target_slowdown = number(require(j, path, "target_slowdown"), path + ".target_slowdown");
    r.margin = number(require(j, path, "margin"), path + ".margin");
    if (j.contains("burst")) {
        const std::string bpath = path + ".burst";
        check_keys(j["burst"], bpath, {"high_bw", "period"});
        BurstRequest b;
        b.high_bw_bytes_per_s =
            quantity(require(j["burst"], bpath, "high_bw"), bpath + ".high_bw", Dimension::data_rate);
        b.period_s = quantity(require(j["burst"], bpath, "period"), bpath + ".period", Dimension::time);
        r.burst = b;
    }
    return r;
}

InferenceData parse_inference(const Json& j, const std::string& path) {
    check_keys(j, path, {"prefill_tokens_per_s", "decode_tokens_per_s", "ref_chips"});
    InferenceData d;
    d.prefill_tokens_per_s =
        number(require(j, path, "prefill_tokens_per_s"), path + ".prefill_tokens_per_s");
    d.decode_tokens_per_s =
        number(require(j, path, "decode_tokens_per_s"), path + ".decode_tokens_per_s");
    d.ref_chips = uinteger(require(j, path, "ref_chips"), path + ".ref_chips");
    return d;
}

PipelineCase parse_pipeline(const Json& j, const std::string& path) {
    check_keys(j, path, {"d_model", "act_bits", "reference_tokens_per_s", "allowance_factor"});
    PipelineCase p;
    p.d_model = uinteger(require(j, path, "d_model"), path + ".d_model");
    p.act_bits = static_cast<int>(uinteger(require(j, path, "act_bits"), path + ".act_bits"));
    p.reference_tokens_per_s =
        number(require(j, path, "reference_tokens_per_s"), path + ".reference_tokens_per_s");
    p.allowance_factor = j.contains("allowance_factor")
                             ? number(j["allowance_factor"], path + ".allowance_factor")
                             : 1.0;
    return p;
}

WorkloadDecl parse_declaration(const Json& j, const std::string& path) {
    check_keys(j, path, {"id", "kind", "declared_flop", "chip_hours", "verified", "method"});
    WorkloadDecl d;
    d.id = require(j, path, "id").get<std::string>();
    try {
        d.kind = parse_workload_kind(require(j, path, "kind").get<std::string>());
        if (j.contains("method")) d.method = parse_verify_method(j["method"].get<std::string>());
    } catch (const SpecError& e) {
        fail(path, e.what());
    }
    d.declared_flop = quantity(require(j, path, "declared_flop"), path + ".declared_flop",
                               Dimension::compute);
    d.chip_hours = number(require(j, path, "chip_hours"), path + ".chip_hours");
    d.verified = require(j, path, "verified").get<bool>();
    return d;
}

LedgerSection parse_ledger(const Json& j, const std::string& path) {
    check_keys(j, path,
               {"window", "recompute_factor", "threshold_flop", "declarations",
                "measured_watts", "power_rel_tol", "projection_years", "alg_rate_per_year",
                "hw_rate_per_year"});
    LedgerSection s;
    s.ledger.window_s = quantity(require(j, path, "window"), path + ".window", Dimension::time);
    if (j.contains("recompute_factor"))
        s.ledger.recompute_factor = number(j["recompute_factor"], path + ".recompute_factor");
    s.threshold_flop =
        quantity(require(j, path, "threshold_flop"), path + ".threshold_flop", Dimension::compute);
    const Json& decls = require(j, path, "declarations");
    if (!decls.is_array()) fail(path + ".declarations", "expected an array");
    for (std::size_t i = 0; i < decls.size(); ++i)
        s.ledger.declarations.push_back(
            parse_declaration(decls[i], path + ".declarations[" + std::to_string(i) + "]"));
    if (j.contains("measured_watts"))
        s.measured_watts =
            quantity(j["measured_watts"], path + ".measured_watts", Dimension::power);
    if (j.contains("power_rel_tol"))
        s.power_rel_tol = number(j["power_rel_tol"], path + ".power_rel_tol");
    if (j.contains("projection_years"))
        s.projection_years = number(j["projection_years"], path + ".projection_years");
    if (j.contains("alg_rate_per_year"))
        s.alg_rate_per_year = number(j["alg_rate_per_year"], path + ".alg_rate_per_year");
    if (j.contains("hw_rate_per_year"))
        s.hw_rate_per_year = number(j["hw_rate_per_year"], path + ".hw_rate_per_year");
    return s;
}

TranscriptSection parse_transcript(const Json& j, const std::string& path) {
    check_keys(j, path, {"config", "path", "digest_only"});
    const Json& jc = require(j, path, "config");
    const std::string cpath = path + ".config";
    check_keys(jc, cpath, {"seed", "dim", "steps", "checkpoint_every", "lr", "data_seed"});
    TranscriptSection t;
    t.config.seed = uinteger(require(jc, cpath, "seed"), cpath + ".seed");
    t.config.dim = uinteger(require(jc, cpath, "dim"), cpath + ".dim");
    t.config.steps = uinteger(require(jc, cpath, "steps"), cpath + ".steps");
    t.config.checkpoint_every =
        uinteger(require(jc, cpath, "checkpoint_every"), cpath + ".checkpoint_every");
    t.config.lr = number(require(jc, cpath, "lr"), cpath + ".lr");
    t.config.data.seed = uinteger(require(jc, cpath, "data_seed"), cpath + ".data_seed");
    t.path = require(j, path, "path").get<std::string>();
    if (j.contains("digest_only")) t.digest_only = j["digest_only"].get<bool>();
    return t;
}

std::vector<std::uint8_t> hex_field(const Json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a hex string");
    try {
        return from_hex(v.get<std::string>());
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
}

PowSection parse_pow(const Json& j, const std::string& path) {
    check_keys(j, path, {"shares", "campaigns", "hashes_per_chip_hour"});
    PowSection s;
    if (j.contains("shares")) {
        const Json& shares = j["shares"];
        if (!shares.is_array()) fail(path + ".shares", "expected an array");
        for (std::size_t i = 0; i < shares.size(); ++i) {
            const std::string spath = path + ".shares[" + std::to_string(i) + "]";
            check_keys(shares[i], spath, {"message_hex", "nonce", "difficulty_bits"});
            Share share;
            share.message = hex_field(require(shares[i], spath, "message_hex"),
                                      spath + ".message_hex");
            share.nonce = uinteger(require(shares[i], spath, "nonce"), spath + ".nonce");
            share.difficulty_bits = static_cast<int>(
                uinteger(require(shares[i], spath, "difficulty_bits"), spath + ".difficulty_bits"));
            s.shares.push_back(std::move(share));
        }
    }
    if (j.contains("campaigns")) {
        const Json& camps = j["campaigns"];
        if (!camps.is_array()) fail(path + ".campaigns", "expected an array");
        for (std::size_t i = 0; i < camps.size(); ++i) {
            const std::string cpath = path + ".campaigns[" + std::to_string(i) + "]";
            check_keys(camps[i], cpath, {"message_hex", "difficulty_bits", "attempts"});
            PowCampaign c;
            c.message = hex_field(require(camps[i], cpath, "message_hex"), cpath + ".message_hex");
            c.difficulty_bits = static_cast<int>(
                uinteger(require(camps[i], cpath, "difficulty_bits"), cpath + ".difficulty_bits"));
            c.attempts = uinteger(require(camps[i], cpath, "attempts"), cpath + ".attempts");
            s.campaigns.push_back(std::move(c));
        }
    }
    if (j.contains("hashes_per_chip_hour"))
        s.hashes_per_chip_hour = number(j["hashes_per_chip_hour"], path + ".hashes_per_chip_hour");
    return s;
}

Point2 parse_point(const Json& v, const std::string& path) {
    if (!v.is_array() || v.size() != 2) fail(path, "expected [x, y] in meters");
    return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

LocationSection parse_location(const Json& j, const std::string& path) {
    check_keys(j, path, {"propagation_speed", "tolerance_m", "sites", "cases"});
    LocationSection s;
    if (j.contains("propagation_speed"))
        s.propagation_speed = number(j["propagation_speed"], path + ".propagation_speed");
    if (j.contains("tolerance_m"))
        s.tolerance_m = number(j["tolerance_m"], path + ".tolerance_m");
    const Json& sites = require(j, path, "sites");
    if (!sites.is_array()) fail(path + ".sites", "expected an array");
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const std::string spath = path + ".sites[" + std::to_string(i) + "]";
        check_keys(sites[i], spath, {"id", "position"});
        ServerSite site;
        site.id = require(sites[i], spath, "id").get<std::string>();
        site.position = parse_point(require(sites[i], spath, "position"), spath + ".position");
        s.sites.push_back(std::move(site));
    }
    const Json& cases = require(j, path, "cases");
    if (!cases.is_array()) fail(path + ".cases", "expected an array");
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const std::string cpath = path + ".cases[" + std::to_string(i) + "]";
        check_keys(cases[i], cpath, {"id", "observations", "simulate", "claim", "slack_m"});
        LocationCase c;
        c.id = cases[i].contains("id") ? cases[i]["id"].get<std::string>()
                                       : "case-" + std::to_string(i);
        if (cases[i].contains("observations")) {
            const Json& obs = cases[i]["observations"];
            if (!obs.is_array()) fail(cpath + ".observations", "expected an array");
            for (std::size_t k = 0; k < obs.size(); ++k) {
                const std::string opath = cpath + ".observations[" + std::to_string(k) + "]";
                check_keys(obs[k], opath, {"site_id", "rtt_s"});
                c.observations.push_back(
                    {require(obs[k], opath, "site_id").get<std::string>(),
                     number(require(obs[k], opath, "rtt_s"), opath + ".rtt_s")});
            }
        }
        if (cases[i].contains("simulate")) {
            const std::string spath = cpath + ".simulate";
            check_keys(cases[i]["simulate"], spath, {"true_position", "processing_delay_s"});
            LocationSimulation sim;
            sim.true_position =
                parse_point(require(cases[i]["simulate"], spath, "true_position"),
                            spath + ".true_position");
            const Json& delays = require(cases[i]["simulate"], spath, "processing_delay_s");
            if (delays.is_number()) {
                sim.per_site_delay_s.assign(s.sites.size(), delays.get<double>());
            } else if (delays.is_array()) {
                for (std::size_t k = 0; k < delays.size(); ++k)
                    sim.per_site_delay_s.push_back(
                        number(delays[k], spath + ".processing_delay_s[" + std::to_string(k) + "]"));
            } else {
                fail(spath + ".processing_delay_s", "expected a number or an array");
            }
            c.simulate = std::move(sim);
        }
        if (!c.simulate && c.observations.empty())
            fail(cpath, "a case needs either observations or a simulate block");
        if (c.simulate && !c.observations.empty())
            fail(cpath, "give observations or a simulate block, not both");
        if (cases[i].contains("claim"))
            c.claim = parse_point(cases[i]["claim"], cpath + ".claim");
        if (cases[i].contains("slack_m"))
            c.slack_m = number(cases[i]["slack_m"], cpath + ".slack_m");
        s.cases.push_back(std::move(c));
    }
    return s;
}

const std::set<std::string> kReferenceKeys = {
    "batch_time_s", "gradient_payload_bytes", "dp_bandwidth_bytes_per_s",
    "prefill_bandwidth_bytes_per_s", "decode_bandwidth_bytes_per_s",
    "training_token_bandwidth_bytes_per_s", "training_token_payload_bytes",
    "gap_ratio", "federated_bandwidth_bytes_per_s", "limit_bytes_per_s",
    "slowdown", "weight_load_days", "pipeline_tokens_per_s",
    "pipeline_reference_slowdown", "training_duration_days",
    "expected_power_watts",
};

}  // namespace

std::filesystem::path Scenario::resolve(const std::string& relative) const {
    const std::filesystem::path p(relative);
    if (p.is_absolute()) return p;
    return base_dir / p;
}

Scenario scenario_from_json_text(const std::string& text,
                                 const std::filesystem::path& base_dir) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
    }

    check_keys(j, "$",
               {"schema_version", "name", "model", "pods", "batch", "federated", "limits",
                "dataset_tokens", "inference", "pipeline", "ledger", "transcript", "pow",
                "location", "references"});

    Scenario s;
    s.base_dir = base_dir;
    const int version =
        static_cast<int>(uinteger(require(j, "$", "schema_version"), "$.schema_version"));
    if (version != 1) fail("$.schema_version", "unsupported version " + std::to_string(version));
    s.schema_version = version;
    if (j.contains("name")) s.name = j["name"].get<std::string>();

    try {
        if (j.contains("model")) s.model = parse_model(j["model"], "$.model");
        if (j.contains("pods")) {
            if (!j["pods"].is_array()) fail("$.pods", "expected an array");
            for (std::size_t i = 0; i < j["pods"].size(); ++i)
                s.pods.push_back(parse_pod(j["pods"][i], "$.pods[" + std::to_string(i) + "]"));
        }
        if (j.contains("batch")) s.batch = parse_batch(j["batch"], "$.batch");
        if (j.contains("federated")) s.federated = parse_federated(j["federated"], "$.federated");
        if (j.contains("limits")) s.limits = parse_limits(j["limits"], "$.limits");
        if (j.contains("dataset_tokens"))
            s.dataset_tokens = number(j["dataset_tokens"], "$.dataset_tokens");
        if (j.contains("inference")) s.inference = parse_inference(j["inference"], "$.inference");
        if (j.contains("pipeline")) s.pipeline = parse_pipeline(j["pipeline"], "$.pipeline");
        if (j.contains("ledger")) {
            s.ledger = parse_ledger(j["ledger"], "$.ledger");
            s.ledger->ledger.pods = s.pods;
        }
        if (j.contains("transcript"))
            s.transcript = parse_transcript(j["transcript"], "$.transcript");
        if (j.contains("pow")) s.pow = parse_pow(j["pow"], "$.pow");
        if (j.contains("location")) s.location = parse_location(j["location"], "$.location");
        if (j.contains("references")) {
            check_keys(j["references"], "$.references", kReferenceKeys);
            for (const auto& [key, value] : j["references"].items())
                s.references[key] = number(value, "$.references." + key);
        }

        // Embedded invariants hold after parse.
        if (s.model) s.model->validate();
        for (const auto& pod : s.pods) pod.validate();
        if (s.batch) s.batch->validate();
        if (s.federated) s.federated->validate();
        if (s.transcript) s.transcript->config.validate();
    } catch (const Json::exception& e) {
        throw SchemaError(std::string("scenario: ") + e.what());
    } catch (const SpecError& e) {
        throw SchemaError(std::string("scenario: ") + e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw SchemaError("cannot open scenario file '" + file.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str(), file.has_parent_path()
                                                  ? file.parent_path()
                                                  : std::filesystem::path("."));
}

void override_seeds(Scenario& s, std::uint64_t value) {
    if (s.transcript) {
        s.transcript->config.seed = value;
        s.transcript->config.data.seed = value + 1;
    }
}

}  // namespace compute_verify
