#pragma once

#include <string>

#include "compute_verify/errors.hpp"

namespace compute_verify {

// Derives inter-pod interconnect caps that keep inference viable while
// imposing a target slowdown on covert training, plus the side-effect
// diagnostics an operator cares about (weight-load time, burst windows).

struct LimitRecommendation {
    double limit_per_direction_bytes_per_s = 0;
    double inference_margin = 0;   ///< limit / inference requirement
    double achieved_slowdown = 0;  ///< covert requirement / limit
    bool feasible = false;
    std::string diagnostic;  ///< set when infeasible
};

/// Periodic high-bandwidth window for bulk transfers (e.g. weight loads)
/// under an otherwise throttled link.
struct BurstSchedule {
    double period_s = 0;  ///< seconds between high-bandwidth windows
    double window_s = 0;  ///< window duration
    double high_bw_bytes_per_s = 0;
};

/// limit = min(inference_req * margin, covert_req / target_slowdown).
/// Feasible iff the inference need (with margin) fits under the training
/// ceiling; an infeasible window is reported, never silently clamped.
LimitRecommendation derive_limit(double inference_req_bytes_per_s,
                                 double covert_req_bytes_per_s,
                                 double target_slowdown, double margin);

/// covert_req / limit, clamped below at 1.
double slowdown_factor(double covert_req_bytes_per_s, double limit_bytes_per_s);

/// Time to move model_bytes through the throttled link.
double weight_load_time_s(double model_bytes, double limit_bytes_per_s);

/// Window needed to move model_bytes at high_bw once per period.
/// Throws ScheduleError when the window does not fit the period.
BurstSchedule burst_plan(double model_bytes, double high_bw_bytes_per_s,
                         double period_s);

}  // namespace compute_verify
