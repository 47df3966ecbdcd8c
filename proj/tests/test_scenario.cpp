#include <doctest.h>

#include <filesystem>
#include <string>

#include "compute_verify/scenario.hpp"

using namespace compute_verify;

namespace {

const std::filesystem::path kScenarioDir = COMPUTE_VERIFY_SCENARIO_DIR;

Scenario parse(const std::string& text) {
    return scenario_from_json_text(text, ".");
}

}  // namespace

TEST_CASE("the bundled llama405b scenario parses with every section intact") {
    const Scenario s = load_scenario(kScenarioDir / "llama405b.json");
    CHECK(s.schema_version == 1);
    CHECK(s.name == "llama405b");
    REQUIRE(s.model.has_value());
    CHECK(s.model->params == doctest::Approx(405e9));
    CHECK(s.model->vocab_size == 128000);
    REQUIRE(s.pods.size() == 1);
    CHECK(s.pods[0].n_chips == 128);
    CHECK(s.pods[0].chip.achieved_flops == doctest::Approx(400e12));  // "400 TFLOP/s"
    REQUIRE(s.batch.has_value());
    CHECK(s.batch->seq_len == 8192);
    REQUIRE(s.federated.has_value());
    CHECK(s.federated->inner_steps_factor == 100);
    REQUIRE(s.limits.has_value());
    CHECK(s.limits->margin == doctest::Approx(1.47));
    REQUIRE(s.limits->burst.has_value());
    CHECK(s.limits->burst->high_bw_bytes_per_s == doctest::Approx(50e9));  // "400 Gb/s"
    CHECK(s.limits->burst->period_s == doctest::Approx(172800.0));         // "48 h"
    REQUIRE(s.inference.has_value());
    CHECK(s.inference->ref_chips == 16);
    REQUIRE(s.pipeline.has_value());
    CHECK(s.pipeline->d_model == 5000);
    CHECK(s.references.at("limit_bytes_per_s") == doctest::Approx(125e3));
}

TEST_CASE("the bundled audit scenario parses with ledger, pow and location") {
    const Scenario s = load_scenario(kScenarioDir / "audit_demo.json");
    REQUIRE(s.ledger.has_value());
    CHECK(s.ledger->ledger.pods.size() == 2);
    CHECK(s.ledger->ledger.pods[1].inter_pod_limit.has_value());
    CHECK(*s.ledger->ledger.pods[1].inter_pod_limit == doctest::Approx(125e3));
    CHECK(s.ledger->ledger.window_s == doctest::Approx(86400.0));
    CHECK(s.ledger->ledger.declarations.size() == 3);
    CHECK(s.ledger->measured_watts.has_value());
    REQUIRE(s.transcript.has_value());
    CHECK(s.transcript->config.steps == 100);
    REQUIRE(s.pow.has_value());
    CHECK(s.pow->shares.size() == 3);
    CHECK(s.pow->campaigns.size() == 1);
    REQUIRE(s.location.has_value());
    CHECK(s.location->sites.size() == 4);
    CHECK(s.location->cases.size() == 2);
}

TEST_CASE("unknown fields are rejected with their JSON path") {
    const char* text = R"({
        "schema_version": 1,
        "model": {"params": 1e9, "d_model": 100, "vocab_size": 1000,
                  "weight_bits": 16, "grad_bits": 16, "act_bits": 16,
                  "head_count": 32}
    })";
    CHECK_THROWS_AS(parse(text), SchemaError);
    try {
        parse(text);
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("$.model.head_count") != std::string::npos);
    }
}

TEST_CASE("missing required fields name the path") {
    try {
        parse(R"({"schema_version": 1, "batch": {"seq_len": 10, "seqs_per_pod": 1}})");
        FAIL("expected SchemaError");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("$.batch.global_batch_tokens") != std::string::npos);
    }
}

TEST_CASE("schema_version is required and pinned") {
    CHECK_THROWS_AS(parse(R"({"name": "x"})"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"schema_version": 99})"), SchemaError);
    CHECK_NOTHROW(parse(R"({"schema_version": 1})"));
}

TEST_CASE("invalid JSON and bad quantities are schema errors") {
    CHECK_THROWS_AS(parse("{"), SchemaError);
    CHECK_THROWS_AS(parse(R"({"schema_version": 1,
        "pods": [{"chip": {"achieved_flops": "400 parsecs"}, "n_chips": 8}]})"),
                    SchemaError);
    // Binary prefixes are rejected at parse time.
    CHECK_THROWS_AS(parse(R"({"schema_version": 1,
        "pods": [{"chip": {"achieved_flops": 1e12}, "n_chips": 8,
                  "inter_pod_limit": "1 MiB/s"}]})"),
                    SchemaError);
}

TEST_CASE("embedded invariants are enforced after parse") {
    // global batch smaller than one pod batch
    CHECK_THROWS_AS(parse(R"({"schema_version": 1,
        "batch": {"seq_len": 8192, "seqs_per_pod": 16, "global_batch_tokens": 10}})"),
                    SchemaError);
    // zero chips
    CHECK_THROWS_AS(parse(R"({"schema_version": 1,
        "pods": [{"chip": {"achieved_flops": 1e12}, "n_chips": 0}]})"),
                    SchemaError);
}

TEST_CASE("seed overrides reach the transcript config") {
    Scenario s = load_scenario(kScenarioDir / "audit_demo.json");
    override_seeds(s, 9001);
    CHECK(s.transcript->config.seed == 9001);
    CHECK(s.transcript->config.data.seed == 9002);
}

TEST_CASE("relative file references resolve against the scenario directory") {
    const Scenario s = load_scenario(kScenarioDir / "audit_demo.json");
    const auto resolved = s.resolve(s.transcript->path);
    CHECK(resolved.parent_path() == kScenarioDir);
    CHECK(s.resolve("/abs/path.json") == std::filesystem::path("/abs/path.json"));
}
