#include "compute_verify/limits.hpp"

#include <algorithm>
#include <cmath>

#include "compute_verify/units.hpp"

namespace compute_verify {

LimitRecommendation derive_limit(double inference_req_bytes_per_s,
                                 double covert_req_bytes_per_s,
                                 double target_slowdown, double margin) {
    if (!(inference_req_bytes_per_s > 0) || !(covert_req_bytes_per_s > 0))
        throw SpecError("derive_limit requires positive bandwidth requirements");
    if (!(target_slowdown > 0)) throw SpecError("target_slowdown must be > 0");
    if (!(margin >= 1)) throw SpecError("margin must be >= 1");

    const double inference_floor = inference_req_bytes_per_s * margin;
    const double training_ceiling = covert_req_bytes_per_s / target_slowdown;

    LimitRecommendation rec;
    rec.limit_per_direction_bytes_per_s = std::min(inference_floor, training_ceiling);
    rec.inference_margin = rec.limit_per_direction_bytes_per_s / inference_req_bytes_per_s;
    rec.achieved_slowdown =
        covert_req_bytes_per_s / rec.limit_per_direction_bytes_per_s;
    rec.feasible = inference_floor <= training_ceiling;
    if (!rec.feasible) {
        rec.diagnostic = "inference requirement of " + format_rate(inference_req_bytes_per_s) +
                         " (x" + std::to_string(margin) + " margin) exceeds the " +
                         format_rate(training_ceiling) + " ceiling that a " +
                         std::to_string(target_slowdown) + "x slowdown of covert training allows";
    }
    return rec;
}

double slowdown_factor(double covert_req_bytes_per_s, double limit_bytes_per_s) {
    if (!(covert_req_bytes_per_s > 0) || !(limit_bytes_per_s > 0))
        throw SpecError("slowdown_factor requires positive inputs");
    return std::max(1.0, covert_req_bytes_per_s / limit_bytes_per_s);
}

double weight_load_time_s(double model_bytes, double limit_bytes_per_s) {
    if (!(model_bytes > 0) || !(limit_bytes_per_s > 0))
        throw SpecError("weight_load_time requires positive inputs");
    return model_bytes / limit_bytes_per_s;
}

BurstSchedule burst_plan(double model_bytes, double high_bw_bytes_per_s,
                         double period_s) {
    if (!(high_bw_bytes_per_s > 0)) throw SpecError("burst bandwidth must be > 0");
    if (model_bytes < 0) throw SpecError("transfer size must be >= 0");
    BurstSchedule sched;
    sched.period_s = period_s;
    sched.high_bw_bytes_per_s = high_bw_bytes_per_s;
    sched.window_s = model_bytes / high_bw_bytes_per_s;
    if (!(sched.window_s < period_s))
        throw ScheduleError("burst window of " + format_duration(sched.window_s) +
                            " does not fit a period of " + format_duration(period_s));
    return sched;
}

}  // namespace compute_verify
