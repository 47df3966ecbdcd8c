#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "compute_verify/units.hpp"

namespace compute_verify {

// Chip-hour ledger over a monitoring window. The verdict answers one
// question: could the unverified remainder of the window hide a training
// run above the FLOP threshold?

enum class WorkloadKind { training, inference, non_ai, idle };
enum class VerifyMethod { re_run, interconnect_limit, inspector, power, unverified };

std::string_view workload_kind_name(WorkloadKind k);
std::string_view verify_method_name(VerifyMethod m);
WorkloadKind parse_workload_kind(std::string_view name);
VerifyMethod parse_verify_method(std::string_view name);

struct WorkloadDecl {
    std::string id;
    WorkloadKind kind = WorkloadKind::idle;
    double declared_flop = 0;
    double chip_hours = 0;
    bool verified = false;
    VerifyMethod method = VerifyMethod::unverified;

    void validate() const;
};

struct ChipHourLedger {
    double window_s = 0;
    std::vector<PodSpec> pods;
    std::vector<WorkloadDecl> declarations;
    double recompute_factor = 1.5;  ///< physical FLOP per declared useful FLOP

    void validate() const;
};

struct Verdict {
    double total_flop_capacity = 0;
    double verified_flop = 0;
    double max_covert_flop = 0;
    double threshold = 0;
    bool compliant = false;
    /// Verified FLOP credit per method; the "unverified" key carries the
    /// covert remainder for Figure-style breakdowns.
    std::map<std::string, double> breakdown;
};

/// Physical FLOP capacity of the window: sum over pods of
/// n_chips * achieved_flops * window_s.
double capacity_flop(const ChipHourLedger& ledger);

/// Produces the compliance verdict.
///
/// Pods carrying an inter-pod interconnect limit count their entire window
/// as verified (negative claim: too little bandwidth to join a large
/// training run, whatever they declared). Declarations are credited against
/// the remaining pods at the blended achieved rate, capped at
/// min(declared_flop, chip_hours * rate / recompute_factor) so recompute
/// overhead can never launder covert work into the verified bucket.
/// verified + covert == capacity exactly.
///
/// Throws LedgerError when declarations claim more chip-hours than the
/// unrestricted pods provide.
Verdict account(const ChipHourLedger& ledger, double threshold_flop);

/// True when measured power is within rel_tol of the expected pod power.
/// Throws SpecError for zero expected power or rel_tol outside (0,1).
bool power_consistency(const std::vector<PodSpec>& pods, double measured_watts,
                       double rel_tol);

/// Forward-projection of a capability-equivalent FLOP threshold under
/// algorithmic-efficiency and hardware-cost trends.
struct ThresholdProjection {
    double years = 0;
    double projected_threshold_flop = 0;  ///< threshold / alg_rate^years
    double hardware_cost_scale = 0;       ///< 1 / hw_rate^years
};

ThresholdProjection project_threshold(double threshold_flop, double years,
                                      double alg_rate_per_year,
                                      double hw_rate_per_year);

}  // namespace compute_verify
