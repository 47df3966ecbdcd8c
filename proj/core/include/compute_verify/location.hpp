#pragma once

#include <string>
#include <vector>

#include "compute_verify/errors.hpp"

namespace compute_verify {

// Ping-based location attestation on a 2-D plane, coordinates in meters.
// RTT gives only an upper bound on distance — a device can add processing
// delay to look farther away, never closer — so claims are checked against
// per-site maximum-distance radii rather than a point fix.

inline constexpr double kDefaultPropagationSpeed = 2e8;  // m/s, roughly fiber

struct Point2 {
    double x = 0;
    double y = 0;
};

struct ServerSite {
    std::string id;
    Point2 position;
};

struct RttObservation {
    std::string site_id;
    double rtt_s = 0;
};

struct LocationEstimate {
    Point2 point;
    double residual_m = 0;  ///< max over sites of (distance - radius)+
    bool consistent = false;
};

enum class ClaimVerdict { consistent, spoofed };

/// rtt_i = 2 * distance(site_i, true_position) / speed + delay_i.
/// Honest devices only ever add delay.
std::vector<RttObservation> simulate_rtt(const std::vector<ServerSite>& sites,
                                         Point2 true_position,
                                         double processing_delay_s,
                                         double propagation_speed);
std::vector<RttObservation> simulate_rtt(const std::vector<ServerSite>& sites,
                                         Point2 true_position,
                                         const std::vector<double>& per_site_delay_s,
                                         double propagation_speed);

/// Physics bound per observation: radius_i = speed * rtt_i / 2.
std::vector<double> max_distance_bounds(const std::vector<RttObservation>& observations,
                                        double propagation_speed);

/// Least-squares point minimizing sum_i (distance_i - speed*rtt_i/2)^2,
/// found by 200 damped Gauss-Newton iterations from the site centroid
/// (fixed iteration count for determinism). consistent iff the estimate
/// violates no radius by more than tolerance_m.
/// Throws GeometryError for fewer than 3 distinct, non-collinear sites.
LocationEstimate estimate_position(const std::vector<ServerSite>& sites,
                                   const std::vector<RttObservation>& observations,
                                   double propagation_speed,
                                   double tolerance_m = 1e-3);

/// Spoofed iff some site's radius (plus slack) cannot reach the claimed
/// position — the claim would need faster-than-propagation signaling.
ClaimVerdict check_claim(Point2 claimed_position,
                         const std::vector<ServerSite>& sites,
                         const std::vector<RttObservation>& observations,
                         double propagation_speed, double slack_m);

}  // namespace compute_verify
