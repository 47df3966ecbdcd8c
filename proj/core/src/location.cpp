#include "compute_verify/location.hpp"

#include <algorithm>
#include <cmath>

namespace compute_verify {

namespace {

double dist(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

const ServerSite& site_by_id(const std::vector<ServerSite>& sites,
                             const std::string& id) {
    for (const auto& s : sites)
        if (s.id == id) return s;
    throw SpecError("observation references unknown site '" + id + "'");
}

void check_sites(const std::vector<ServerSite>& sites) {
    for (std::size_t i = 0; i < sites.size(); ++i)
        for (std::size_t j = i + 1; j < sites.size(); ++j)
            if (sites[i].id == sites[j].id)
                throw SpecError("duplicate site id '" + sites[i].id + "'");
}

// Degenerate iff the matched sites span less than a genuine 2-D spread:
// fewer than 3 of them, or the scatter matrix is (near-)rank-1.
void check_geometry(const std::vector<Point2>& positions) {
    if (positions.size() < 3)
        throw GeometryError("position estimation needs at least 3 sites");
    Point2 mean{0, 0};
    for (const auto& p : positions) {
        mean.x += p.x;
        mean.y += p.y;
    }
    mean.x /= static_cast<double>(positions.size());
    mean.y /= static_cast<double>(positions.size());
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : positions) {
        const double dx = p.x - mean.x;
        const double dy = p.y - mean.y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // Eigenvalues of the 2x2 scatter matrix.
    const double tr = sxx + syy;
    const double det = sxx * syy - sxy * sxy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double lambda_min = tr / 2.0 - disc;
    const double lambda_max = tr / 2.0 + disc;
    if (!(lambda_min > 1e-12 * std::max(lambda_max, 1.0)))
        throw GeometryError("sites are collinear or coincident; geometry is degenerate");
}

}  // namespace

std::vector<RttObservation> simulate_rtt(const std::vector<ServerSite>& sites,
                                         Point2 true_position,
                                         double processing_delay_s,
                                         double propagation_speed) {
    return simulate_rtt(sites, true_position,
                        std::vector<double>(sites.size(), processing_delay_s),
                        propagation_speed);
}

std::vector<RttObservation> simulate_rtt(const std::vector<ServerSite>& sites,
                                         Point2 true_position,
                                         const std::vector<double>& per_site_delay_s,
                                         double propagation_speed) {
    if (!(propagation_speed > 0)) throw SpecError("propagation_speed must be > 0");
    if (sites.empty()) throw SpecError("simulate_rtt needs at least one site");
    if (per_site_delay_s.size() != sites.size())
        throw SpecError("need one processing delay per site");
    check_sites(sites);
    std::vector<RttObservation> obs;
    obs.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (!(per_site_delay_s[i] >= 0))
            throw SpecError("processing delays are non-negative; honest devices only add time");
        obs.push_back({sites[i].id,
                       2.0 * dist(sites[i].position, true_position) / propagation_speed +
                           per_site_delay_s[i]});
    }
    return obs;
}

std::vector<double> max_distance_bounds(const std::vector<RttObservation>& observations,
                                        double propagation_speed) {
    if (!(propagation_speed > 0)) throw SpecError("propagation_speed must be > 0");
    std::vector<double> radii;
    radii.reserve(observations.size());
    for (const auto& o : observations) {
        if (!(o.rtt_s >= 0) || !std::isfinite(o.rtt_s))
            throw SpecError("rtt must be finite and non-negative");
        radii.push_back(propagation_speed * o.rtt_s / 2.0);
    }
    return radii;
}

LocationEstimate estimate_position(const std::vector<ServerSite>& sites,
                                   const std::vector<RttObservation>& observations,
                                   double propagation_speed, double tolerance_m) {
    check_sites(sites);
    if (observations.empty()) throw SpecError("no observations");
    const std::vector<double> radii = max_distance_bounds(observations, propagation_speed);

    std::vector<Point2> anchors;
    anchors.reserve(observations.size());
    for (const auto& o : observations)
        anchors.push_back(site_by_id(sites, o.site_id).position);
    check_geometry(anchors);

    // Damped Gauss-Newton on f_i(p) = |p - a_i| - r_i, fixed 200 iterations
    // from the anchor centroid for determinism.
    Point2 p{0, 0};
    for (const auto& a : anchors) {
        p.x += a.x;
        p.y += a.y;
    }
    p.x /= static_cast<double>(anchors.size());
    p.y /= static_cast<double>(anchors.size());

    constexpr int kIterations = 200;
    constexpr double kDamping = 1e-9;
    for (int it = 0; it < kIterations; ++it) {
        double jtj_xx = 0, jtj_xy = 0, jtj_yy = 0, jtf_x = 0, jtf_y = 0;
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            const double dx = p.x - anchors[i].x;
            const double dy = p.y - anchors[i].y;
            const double d = std::hypot(dx, dy);
            if (d < 1e-12) continue;  // gradient undefined exactly on a site
            const double f = d - radii[i];
            const double ux = dx / d;
            const double uy = dy / d;
            jtj_xx += ux * ux;
            jtj_xy += ux * uy;
            jtj_yy += uy * uy;
            jtf_x += ux * f;
            jtf_y += uy * f;
        }
        const double lambda = kDamping * std::max(1.0, jtj_xx + jtj_yy);
        const double axx = jtj_xx + lambda;
        const double ayy = jtj_yy + lambda;
        const double det = axx * ayy - jtj_xy * jtj_xy;
        if (det == 0.0) break;
        p.x -= (ayy * jtf_x - jtj_xy * jtf_y) / det;
        p.y -= (axx * jtf_y - jtj_xy * jtf_x) / det;
    }

    LocationEstimate est;
    est.point = p;
    double worst = 0;
    for (std::size_t i = 0; i < anchors.size(); ++i)
        worst = std::max(worst, dist(p, anchors[i]) - radii[i]);
    est.residual_m = std::max(0.0, worst);
    est.consistent = est.residual_m <= tolerance_m;
    return est;
}

ClaimVerdict check_claim(Point2 claimed_position,
                         const std::vector<ServerSite>& sites,
                         const std::vector<RttObservation>& observations,
                         double propagation_speed, double slack_m) {
    check_sites(sites);
    if (!(slack_m >= 0)) throw SpecError("slack_m must be >= 0");
    const std::vector<double> radii = max_distance_bounds(observations, propagation_speed);
    for (std::size_t i = 0; i < observations.size(); ++i) {
        const ServerSite& site = site_by_id(sites, observations[i].site_id);
        if (dist(claimed_position, site.position) > radii[i] + slack_m)
            return ClaimVerdict::spoofed;
    }
    return ClaimVerdict::consistent;
}

}  // namespace compute_verify
