#include "compute_verify/accounting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace compute_verify {

std::string_view workload_kind_name(WorkloadKind k) {
    switch (k) {
        case WorkloadKind::training: return "training";
        case WorkloadKind::inference: return "inference";
        case WorkloadKind::non_ai: return "non-AI";
        case WorkloadKind::idle: return "idle";
    }
    return "?";
}

std::string_view verify_method_name(VerifyMethod m) {
    switch (m) {
        case VerifyMethod::re_run: return "re-run";
        case VerifyMethod::interconnect_limit: return "interconnect-limit";
        case VerifyMethod::inspector: return "inspector";
        case VerifyMethod::power: return "power";
        case VerifyMethod::unverified: return "unverified";
    }
    return "?";
}

WorkloadKind parse_workload_kind(std::string_view name) {
    if (name == "training") return WorkloadKind::training;
    if (name == "inference") return WorkloadKind::inference;
    if (name == "non-AI" || name == "non-ai") return WorkloadKind::non_ai;
    if (name == "idle") return WorkloadKind::idle;
    throw SpecError("unknown workload kind '" + std::string(name) + "'");
}

VerifyMethod parse_verify_method(std::string_view name) {
    if (name == "re-run") return VerifyMethod::re_run;
    if (name == "interconnect-limit") return VerifyMethod::interconnect_limit;
    if (name == "inspector") return VerifyMethod::inspector;
    if (name == "power") return VerifyMethod::power;
    if (name == "unverified") return VerifyMethod::unverified;
    throw SpecError("unknown verification method '" + std::string(name) + "'");
}

void WorkloadDecl::validate() const {
    if (!(declared_flop >= 0)) throw SpecError("WorkloadDecl.declared_flop must be >= 0");
    if (!(chip_hours >= 0)) throw SpecError("WorkloadDecl.chip_hours must be >= 0");
    if (verified && method == VerifyMethod::unverified)
        throw SpecError("verified workload '" + id + "' must carry a verification method");
}

void ChipHourLedger::validate() const {
    if (!(window_s > 0)) throw SpecError("ChipHourLedger.window_s must be > 0");
    if (!(recompute_factor >= 1)) throw SpecError("recompute_factor must be >= 1");
    for (const auto& pod : pods) pod.validate();
    for (const auto& decl : declarations) decl.validate();
}

double capacity_flop(const ChipHourLedger& ledger) {
    ledger.validate();
    double total = 0;
    for (const auto& pod : ledger.pods)
        total += static_cast<double>(pod.n_chips) * pod.chip.achieved_flops * ledger.window_s;
    return total;
}

Verdict account(const ChipHourLedger& ledger, double threshold_flop) {
    ledger.validate();
    if (!(threshold_flop > 0)) throw SpecError("threshold must be > 0");

    // Interconnect-limited pods are verified wholesale: with a capped link
    // they cannot take part in a large parallel run, whatever they declared.
    // Declarations therefore draw on the unrestricted pods only.
    double capacity = 0;
    double limited_capacity = 0;
    double free_chips = 0;
    double free_rate_flops = 0;  // summed achieved FLOP/s of unrestricted pods
    for (const auto& pod : ledger.pods) {
        const double chips = static_cast<double>(pod.n_chips);
        const double pod_capacity = chips * pod.chip.achieved_flops * ledger.window_s;
        capacity += pod_capacity;
        if (pod.inter_pod_limit) {
            limited_capacity += pod_capacity;
        } else {
            free_chips += chips;
            free_rate_flops += chips * pod.chip.achieved_flops;
        }
    }

    double declared_hours = 0;
    for (const auto& decl : ledger.declarations) declared_hours += decl.chip_hours;
    const double available_hours = free_chips * ledger.window_s / kSecondsPerHour;
    if (declared_hours > available_hours) {
        std::ostringstream msg;
        msg << "ledger declares " << declared_hours << " chip-hours but the window provides only "
            << available_hours << " on unrestricted pods (";
        bool first = true;
        for (std::size_t i = 0; i < ledger.pods.size(); ++i) {
            if (ledger.pods[i].inter_pod_limit) continue;
            if (!first) msg << ", ";
            msg << "pod[" << i << "] x" << ledger.pods[i].n_chips;
            first = false;
        }
        if (first) msg << "none";
        msg << "; interconnect-limited pods are verified wholesale and host no declarations)";
        throw LedgerError(msg.str());
    }

    // Blended achieved rate of the pods the declarations run on.
    const double chip_rate = free_chips > 0 ? free_rate_flops / free_chips : 0.0;

    Verdict v;
    v.total_flop_capacity = capacity;
    v.threshold = threshold_flop;

    // Credits are summed in sorted order per method so the verdict is
    // exactly permutation-invariant over declarations.
    std::map<VerifyMethod, std::vector<double>> credits;
    for (const auto m : {VerifyMethod::re_run, VerifyMethod::interconnect_limit,
                         VerifyMethod::inspector, VerifyMethod::power})
        credits[m] = {};
    credits[VerifyMethod::interconnect_limit].push_back(limited_capacity);

    for (const auto& decl : ledger.declarations) {
        if (!decl.verified) continue;
        // Credit is capped by the physical capacity of the declared hours,
        // discounted by the recompute factor: overhead hours cannot hide
        // covert work inside a verified declaration.
        const double hours_capacity = decl.chip_hours * kSecondsPerHour * chip_rate;
        credits[decl.method].push_back(
            std::min(decl.declared_flop, hours_capacity / ledger.recompute_factor));
    }

    double verified = 0;
    for (auto& [method, values] : credits) {
        std::sort(values.begin(), values.end());
        double method_total = 0;
        for (double c : values) method_total += c;
        v.breakdown[std::string(verify_method_name(method))] = method_total;
        verified += method_total;
    }

    v.verified_flop = verified;
    v.max_covert_flop = capacity - verified;
    v.compliant = v.max_covert_flop < threshold_flop;
    v.breakdown[std::string(verify_method_name(VerifyMethod::unverified))] = v.max_covert_flop;
    return v;
}

bool power_consistency(const std::vector<PodSpec>& pods, double measured_watts,
                       double rel_tol) {
    if (!(rel_tol > 0) || !(rel_tol < 1)) throw SpecError("rel_tol must lie in (0,1)");
    double expected = 0;
    for (const auto& pod : pods) expected += pod_power_watts(pod);
    if (!(expected > 0)) throw SpecError("expected pod power is zero; nothing to compare");
    return std::fabs(measured_watts - expected) / expected <= rel_tol;
}

ThresholdProjection project_threshold(double threshold_flop, double years,
                                      double alg_rate_per_year,
                                      double hw_rate_per_year) {
    if (!(threshold_flop > 0)) throw SpecError("threshold must be > 0");
    if (!(alg_rate_per_year > 0) || !(hw_rate_per_year > 0))
        throw SpecError("rates must be > 0");
    if (!(years >= 0)) throw SpecError("years must be >= 0");
    ThresholdProjection p;
    p.years = years;
    p.projected_threshold_flop = threshold_flop / std::pow(alg_rate_per_year, years);
    p.hardware_cost_scale = 1.0 / std::pow(hw_rate_per_year, years);
    return p;
}

}  // namespace compute_verify
