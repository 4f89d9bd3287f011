#include "gmtk/content.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gmtk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_1d(const PointCloud& cloud) {
  return cloud.has_coords() && !cloud.coords.empty() && cloud.coords[0].size() == 1;
}

// Declared diameter of a candidate member set: diameter of the union of the
// members' atom cells. Exact in 1D and for modest sizes; bounded by the
// generating ball otherwise.
double declared_diameter(const PointCloud& cloud, const std::vector<int>& members,
                         double ball_radius) {
  if (members.empty()) return 0.0;
  if (members.size() == 1) return cloud.atom(members[0]);
  if (is_1d(cloud)) {
    double lo = kInf, hi = -kInf;
    for (int i : members) {
      lo = std::min(lo, cloud.coords[i][0] - cloud.atom(i) / 2.0);
      hi = std::max(hi, cloud.coords[i][0] + cloud.atom(i) / 2.0);
    }
    return hi - lo;
  }
  if (members.size() <= 128) return cloud.cover_diameter(members);
  double max_atom = 0.0;
  for (int i : members) max_atom = std::max(max_atom, cloud.atom(i));
  return 2.0 * ball_radius + max_atom;
}

}  // namespace

std::vector<int> ball_members(const PointCloud& cloud, const Ball& ball) {
  std::vector<int> out;
  for (std::size_t p = 0; p < cloud.size(); ++p)
    if (cloud.dist(ball.center, int(p)) <= ball.radius) out.push_back(int(p));
  return out;
}

std::vector<int> ball_members_at(const PointCloud& cloud, std::span<const double> center,
                                 double radius) {
  if (!cloud.has_coords()) throw std::invalid_argument("ball_members_at: needs coordinates");
  std::vector<int> out;
  for (std::size_t p = 0; p < cloud.size(); ++p) {
    double acc = 0.0;
    for (std::size_t d = 0; d < center.size(); ++d) {
      double diff = cloud.coords[p][d] - center[d];
      acc += diff * diff;
    }
    if (std::sqrt(acc) <= radius) out.push_back(int(p));
  }
  return out;
}

Dyadic dyadic_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("dyadic_from_double: not finite");
  double v = value;
  int k = 0;
  while (v != std::floor(v)) {
    v *= 2.0;
    ++k;
    if (k > 60) throw std::invalid_argument("dyadic_from_double: not dyadic within 2^-60");
  }
  if (std::abs(v) > 9e18) throw std::overflow_error("dyadic_from_double: numerator overflow");
  return Dyadic(static_cast<std::int64_t>(v), k);
}

CoverCandidatePool greedy_candidate_pool(const PointCloud& cloud,
                                         std::span<const int> region, double delta) {
  CoverCandidatePool pool;
  pool.delta = delta;
  if (region.empty()) return pool;

  // radius grid: dyadic 2^-k, from the coarsest useful radius down to below
  // the atom scale (or nearest-neighbor scale when atoms are absent)
  double spread = 0.0;
  for (std::size_t a = 0; a < region.size(); ++a)
    for (std::size_t b = a + 1; b < region.size(); ++b)
      spread = std::max(spread, cloud.dist(region[a], region[b]));
  double r_hi = std::isinf(delta) ? std::max(spread, cloud.atom(region[0]))
                                  : delta / 2.0;
  double fine_scale = kInf;
  for (int i : region)
    if (cloud.atom(i) > 0.0) fine_scale = std::min(fine_scale, cloud.atom(i));
  if (std::isinf(fine_scale)) {
    for (std::size_t a = 0; a < region.size(); ++a)
      for (std::size_t b = a + 1; b < region.size(); ++b)
        fine_scale = std::min(fine_scale, cloud.dist(region[a], region[b]));
    if (std::isinf(fine_scale)) fine_scale = 1.0;
  }
  double r_lo = std::max(fine_scale / 4.0, r_hi * std::ldexp(1.0, -26));
  if (r_hi <= 0.0) r_hi = 1.0;

  int k_start = int(std::ceil(-std::log2(r_hi)));
  std::map<std::vector<int>, std::size_t> seen;
  for (int k = k_start; std::ldexp(1.0, -k) >= r_lo && k - k_start < 40; ++k) {
    double r = std::ldexp(1.0, -k);
    for (int center : region) {
      std::vector<int> members;
      for (int p : region)
        if (cloud.dist(center, p) <= r) members.push_back(p);
      if (members.empty()) continue;
      double diam = declared_diameter(cloud, members, r);
      if (!std::isinf(delta) && diam > delta) continue;
      auto [it, inserted] = seen.try_emplace(members, pool.candidates.size());
      if (inserted) {
        pool.candidates.push_back({std::move(members), diam});
      } else if (diam < pool.candidates[it->second].diameter) {
        pool.candidates[it->second].diameter = diam;
      }
    }
  }
  // singleton atoms stay admissible below the cap: contents under the atom
  // scale saturate at the atom-cover value rather than becoming infeasible
  for (int p : region) {
    std::vector<int> single = {p};
    double diam = cloud.atom(p);
    auto [it, inserted] = seen.try_emplace(single, pool.candidates.size());
    if (inserted)
      pool.candidates.push_back({std::move(single), diam});
    else
      pool.candidates[it->second].diameter = std::min(pool.candidates[it->second].diameter, diam);
  }
  return pool;
}

ContentEstimate content_greedy(const PointCloud& cloud, std::span<const int> region,
                               double s, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("content_greedy: delta must be positive");
  ContentEstimate est;
  est.s = s;
  est.delta = delta;
  est.method = ContentMethod::greedy;
  if (region.empty()) return est;

  double mass = cloud.mass(region);
  double kappa = cloud.kappa(delta);
  est.lower_bound = kappa > 0.0 ? mass / kappa : 0.0;

  CoverCandidatePool pool = greedy_candidate_pool(cloud, region, delta);
  const auto& cands = pool.candidates;

  // position of each region point for coverage bookkeeping
  std::map<int, int> pos;
  for (std::size_t i = 0; i < region.size(); ++i) pos[region[i]] = int(i);
  std::vector<char> covered(region.size(), 0);
  std::size_t n_covered = 0;

  std::vector<double> cost(cands.size());
  for (std::size_t c = 0; c < cands.size(); ++c) cost[c] = std::pow(cands[c].diameter, s);

  std::vector<std::size_t> picked;
  while (n_covered < region.size()) {
    std::size_t best = cands.size();
    double best_score = -1.0;
    bool best_free = false;
    for (std::size_t c = 0; c < cands.size(); ++c) {
      double marg = 0.0;
      for (int m : cands[c].members)
        if (!covered[pos[m]]) marg += cloud.weights[m];
      if (marg <= 0.0) continue;
      if (cost[c] == 0.0) {  // free candidate, always take first such
        best = c;
        best_free = true;
        break;
      }
      double score = marg / cost[c];
      if (score > best_score * (1.0 + 1e-15)) {
        best_score = score;
        best = c;
      }
    }
    if (best == cands.size()) {
      // points with zero weight left uncovered by mass-greedy: cover each
      // by its singleton atom
      for (std::size_t i = 0; i < region.size(); ++i)
        if (!covered[i]) {
          for (std::size_t c = 0; c < cands.size(); ++c)
            if (cands[c].members.size() == 1 && cands[c].members[0] == region[i]) {
              picked.push_back(c);
              break;
            }
          covered[i] = 1;
          ++n_covered;
        }
      break;
    }
    (void)best_free;
    picked.push_back(best);
    for (int m : cands[best].members)
      if (!covered[pos[m]]) {
        covered[pos[m]] = 1;
        ++n_covered;
      }
  }

  // prune: drop picked sets (most expensive first) that the rest still cover
  std::vector<int> cover_count(region.size(), 0);
  for (std::size_t c : picked)
    for (int m : cands[c].members) ++cover_count[pos[m]];
  std::vector<std::size_t> order(picked.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cost[picked[a]] > cost[picked[b]];
  });
  std::vector<char> dropped(picked.size(), 0);
  for (std::size_t oi : order) {
    bool redundant = true;
    for (int m : cands[picked[oi]].members)
      if (cover_count[pos[m]] <= 1) {
        redundant = false;
        break;
      }
    if (redundant) {
      dropped[oi] = 1;
      for (int m : cands[picked[oi]].members) --cover_count[pos[m]];
    }
  }

  std::vector<double> kept_costs;
  for (std::size_t i = 0; i < picked.size(); ++i)
    if (!dropped[i]) kept_costs.push_back(cost[picked[i]]);
  std::sort(kept_costs.begin(), kept_costs.end());
  est.value = kahan_sum(kept_costs);
  est.upper_bound = est.value;
  return est;
}

ContentEstimate content_oracle_exact(const PointCloud&, std::span<const int> region,
                                     double s, double delta,
                                     const CoverCandidatePool& pool) {
  ContentEstimate est;
  est.s = s;
  est.delta = delta;
  est.method = ContentMethod::oracle_exact;
  if (region.empty()) return est;
  for (const auto& cand : pool.candidates) {
    if (cand.members.empty()) throw std::invalid_argument("oracle: empty candidate");
    if (!std::isinf(pool.delta) && cand.diameter > pool.delta * (1.0 + 1e-12) &&
        cand.members.size() > 1)
      throw std::invalid_argument("oracle: candidate diameter exceeds pool delta");
  }
  if (pool.candidates.size() > 24 && region.size() > 16)
    throw std::invalid_argument("oracle: pool > 24 and region > 16, instance too large");

  std::map<int, int> pos;
  for (std::size_t i = 0; i < region.size(); ++i) pos[region[i]] = int(i);
  std::uint32_t full = region.size() >= 32 ? 0xffffffffu
                                           : ((std::uint32_t(1) << region.size()) - 1);
  if (region.size() > 31) throw std::invalid_argument("oracle: region too large");

  std::vector<std::uint32_t> masks;
  std::vector<double> costs;
  std::uint32_t reachable = 0;
  for (const auto& cand : pool.candidates) {
    std::uint32_t m = 0;
    for (int p : cand.members) {
      auto it = pos.find(p);
      if (it != pos.end()) m |= std::uint32_t(1) << it->second;
    }
    if (m == 0) continue;
    masks.push_back(m);
    costs.push_back(std::pow(cand.diameter, s));
    reachable |= m;
  }
  if (reachable != full) throw std::domain_error("oracle: pool does not cover the region");

  if (region.size() <= 16) {
    // DP over coverage masks: exact minimum
    std::size_t n_masks = std::size_t(1) << region.size();
    std::vector<double> dp(n_masks, kInf);
    dp[0] = 0.0;
    for (std::uint32_t mask = 0; mask + 1 < n_masks + 1 && mask < n_masks; ++mask) {
      if (!std::isfinite(dp[mask])) continue;
      if (mask == full) continue;
      // lowest uncovered element
      int lowest = 0;
      while (mask & (std::uint32_t(1) << lowest)) ++lowest;
      for (std::size_t c = 0; c < masks.size(); ++c) {
        if (!(masks[c] & (std::uint32_t(1) << lowest))) continue;
        std::uint32_t next = mask | masks[c];
        dp[next] = std::min(dp[next], dp[mask] + costs[c]);
      }
    }
    est.value = dp[full];
  } else {
    // pool <= 24: branch and bound over include/exclude
    double best = kInf;
    // order candidates by cost ascending for tighter early bounds
    std::vector<std::size_t> order(masks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return costs[a] < costs[b]; });
    auto rec = [&](auto&& self, std::size_t idx, std::uint32_t cov, double acc) -> void {
      if (acc >= best) return;
      if (cov == full) {
        best = acc;
        return;
      }
      if (idx == order.size()) return;
      std::uint32_t rest = 0;
      for (std::size_t j = idx; j < order.size(); ++j) rest |= masks[order[j]];
      if ((cov | rest) != full) return;
      self(self, idx + 1, cov | masks[order[idx]], acc + costs[order[idx]]);
      self(self, idx + 1, cov, acc);
    };
    rec(rec, 0, 0, 0.0);
    est.value = best;
  }
  est.lower_bound = est.value;
  est.upper_bound = est.value;
  return est;
}

ContentEstimate content_intervals_estimate(const IntervalUnion& u, const Dyadic& window_lo,
                                           const Dyadic& window_hi,
                                           const std::optional<Dyadic>& delta) {
  ContentEstimate est;
  est.s = 1.0;
  est.delta = delta ? delta->to_double() : kInf;
  est.method = ContentMethod::interval_exact;
  Dyadic v = interval_content_exact_in_window(u, window_lo, window_hi, delta);
  est.value = v.to_double();
  est.lower_bound = est.value;
  est.upper_bound = est.value;
  return est;
}

double density_ratio(const PointCloud& cloud, const Ball& ball, double s, double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw std::invalid_argument("density_ratio: rho in (0,1]");
  std::vector<int> region = ball_members(cloud, ball);
  if (region.empty()) return 0.0;
  ContentEstimate est = content_greedy(cloud, region, s, rho * ball.radius);
  return est.value / std::pow(2.0 * ball.radius, s);
}

bool delta_monotonicity_holds(const ContentEstimate& larger_delta,
                              const ContentEstimate& smaller_delta, double tol) {
  return larger_delta.value <= smaller_delta.value + tol;
}

}  // namespace gmtk
