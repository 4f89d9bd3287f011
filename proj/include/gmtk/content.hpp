#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmtk/intervals.hpp"
#include "gmtk/net.hpp"
#include "gmtk/point_cloud.hpp"

namespace gmtk {

enum class ContentMethod { greedy, oracle_exact, interval_exact, mass_lower_bound };

/// Certified two-sided estimate of H^s_delta over a region of a cloud.
struct ContentEstimate {
  double value = 0.0;
  double s = 1.0;
  double delta = std::numeric_limits<double>::infinity();
  ContentMethod method = ContentMethod::greedy;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
};

struct CoverCandidate {
  std::vector<int> members;
  double diameter = 0.0;
};

struct CoverCandidatePool {
  std::vector<CoverCandidate> candidates;
  double delta = std::numeric_limits<double>::infinity();
};

/// Greedy cover estimator. Candidates are balls centered at region points
/// with dyadic radii <= delta/2 plus singleton atoms; the value is the cost
/// of the greedy cover (an upper bound), the lower bound comes from the
/// mass-distribution principle via the cloud's kappa profile (0 when
/// unavailable). Among equal marginal scores the lowest candidate index
/// wins, so the result is deterministic.
ContentEstimate content_greedy(const PointCloud& cloud, std::span<const int> region,
                               double s, double delta);

/// The candidate pool content_greedy would search, exposed so the exact
/// oracle can run on the same search space.
CoverCandidatePool greedy_candidate_pool(const PointCloud& cloud,
                                         std::span<const int> region, double delta);

/// Exact minimum of sum(diam^s) over sub-pools covering the region.
/// Requires pool size <= 24 (exhaustive) or region size <= 16 (mask DP).
ContentEstimate content_oracle_exact(const PointCloud& cloud, std::span<const int> region,
                                     double s, double delta,
                                     const CoverCandidatePool& pool);

/// Exact H^1_delta of a clipped dyadic interval union, packaged as an
/// estimate with equal bounds (s = 1 only).
ContentEstimate content_intervals_estimate(const IntervalUnion& u, const Dyadic& window_lo,
                                           const Dyadic& window_hi,
                                           const std::optional<Dyadic>& delta = std::nullopt);

/// H^s_{rho r}(X cap B) / (2r)^s, the statistic thresholded by the packing
/// theorem. Returns 0 when the ball misses the cloud.
double density_ratio(const PointCloud& cloud, const Ball& ball, double s, double rho);

/// The monotonicity of H^s_delta in delta, as a reusable predicate:
/// coarse (larger delta) value must not exceed the finer one.
bool delta_monotonicity_holds(const ContentEstimate& larger_delta,
                              const ContentEstimate& smaller_delta, double tol = 1e-12);

/// Indices of cloud points in the closed ball (center given as an index or
/// as an explicit coordinate vector).
std::vector<int> ball_members(const PointCloud& cloud, const Ball& ball);
std::vector<int> ball_members_at(const PointCloud& cloud, std::span<const double> center,
                                 double radius);

/// Exact-when-representable conversion of a double to a dyadic rational;
/// throws if the exponent does not fit.
Dyadic dyadic_from_double(double value);

}  // namespace gmtk
