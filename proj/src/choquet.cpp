#include "gmtk/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace gmtk {

MonotoneSetFunction mass_set_function(const PointCloud& cloud) {
  return {"mass", [&cloud](const std::vector<int>& ix) { return cloud.mass(ix); }};
}

MonotoneSetFunction greedy_content_set_function(const PointCloud& cloud, double s,
                                                double delta) {
  return {"greedy_content", [&cloud, s, delta](const std::vector<int>& ix) {
            if (ix.empty()) return 0.0;
            return content_greedy(cloud, ix, s, delta).value;
          }};
}

MonotoneSetFunction oracle_content_set_function(const PointCloud& cloud, double s,
                                                double delta) {
  return {"oracle_content", [&cloud, s, delta](const std::vector<int>& ix) {
            if (ix.empty()) return 0.0;
            auto pool = greedy_candidate_pool(cloud, ix, delta);
            return content_oracle_exact(cloud, ix, s, delta, pool).value;
          }};
}

MonotoneSetFunction interval_content_set_function(const std::vector<DyadicInterval>& cells,
                                                  const std::optional<Dyadic>& delta) {
  return {"interval_content", [cells, delta](const std::vector<int>& ix) {
            std::vector<DyadicInterval> parts;
            for (int i : ix) parts.push_back(cells.at(std::size_t(i)));
            return interval_content_exact(normalize_intervals(std::move(parts)), delta)
                .to_double();
          }};
}

double choquet_integral(const MonotoneSetFunction& mu, std::span<const double> f,
                        std::size_t n_points) {
  if (f.size() != n_points)
    throw std::invalid_argument("choquet_integral: f size mismatch");
  std::vector<int> order(n_points);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return f[a] > f[b]; });

  // Level sets {f > t} change only at the sorted values; walk thresholds
  // from the top, carrying the growing superlevel set.
  std::vector<int> level;
  std::vector<double> terms;
  double mu_all = 0.0;
  {
    std::vector<int> all(order.begin(), order.end());
    std::sort(all.begin(), all.end());
    mu_all = mu.eval(all);
  }
  std::size_t i = 0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  double vmax = n_points ? f[order[0]] : 0.0;
  while (i < n_points) {
    double v = f[order[i]];
    if (!std::isnan(prev)) {
      std::vector<int> sorted_level = level;
      std::sort(sorted_level.begin(), sorted_level.end());
      double mu_level = mu.eval(sorted_level);
      double lo = std::max(v, 0.0), hi = std::max(prev, 0.0);
      if (hi > lo) terms.push_back((hi - lo) * mu_level);
      lo = std::min(v, 0.0), hi = std::min(prev, 0.0);
      if (hi > lo) terms.push_back((hi - lo) * (mu_level - mu_all));
    }
    while (i < n_points && f[order[i]] == v) level.push_back(order[i++]);
    prev = v;
  }
  if (!std::isnan(prev)) {
    // remaining strips: (0, min f) over the full set when everything is
    // positive, (max f, 0) over the empty set when everything is negative
    if (prev > 0.0) terms.push_back(prev * mu_all);
    if (vmax < 0.0) terms.push_back(vmax * mu_all);
  }
  std::sort(terms.begin(), terms.end());
  return kahan_sum(terms);
}

QuasiSubadditivityCheck check_quasi_subadditivity(const MonotoneSetFunction& mu,
                                                  std::span<const double> f,
                                                  std::span<const double> g, double gamma,
                                                  std::size_t n_points) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("check_quasi_subadditivity: gamma must be in (0,1)");
  for (double v : f)
    if (v < 0.0) throw std::invalid_argument("check_quasi_subadditivity: f must be >= 0");
  for (double v : g)
    if (v < 0.0) throw std::invalid_argument("check_quasi_subadditivity: g must be >= 0");
  std::vector<double> sum(n_points);
  for (std::size_t i = 0; i < n_points; ++i) sum[i] = f[i] + g[i];
  QuasiSubadditivityCheck out;
  out.lhs = choquet_integral(mu, sum, n_points);
  out.rhs = choquet_integral(mu, f, n_points) / gamma +
            choquet_integral(mu, g, n_points) / (1.0 - gamma);
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-12) + 1e-15;
  return out;
}

SeparatedAdditivityCheck check_separated_additivity(const PointCloud& cloud,
                                                    const MonotoneSetFunction& mu,
                                                    const std::vector<int>& e_indices,
                                                    const std::vector<int>& f_indices,
                                                    double rho) {
  for (int i : e_indices)
    for (int j : f_indices)
      if (cloud.dist(i, j) < 2.0 * rho)
        throw std::invalid_argument(
            "check_separated_additivity: points " + std::to_string(i) + " and " +
            std::to_string(j) + " are closer than 2*rho");
  std::vector<int> joint = e_indices;
  joint.insert(joint.end(), f_indices.begin(), f_indices.end());
  std::sort(joint.begin(), joint.end());
  std::vector<int> e = e_indices, f = f_indices;
  std::sort(e.begin(), e.end());
  std::sort(f.begin(), f.end());
  SeparatedAdditivityCheck out;
  out.joint = mu.eval(joint);
  out.split = mu.eval(e) + mu.eval(f);
  out.gap = std::abs(out.joint - out.split);
  return out;
}

double support_distance(const PointCloud& cloud, std::span<const int> e_indices,
                        std::span<const int> f_indices) {
  if (e_indices.empty() || f_indices.empty())
    throw std::invalid_argument("support_distance: empty index set");
  auto one_sided = [&](std::span<const int> from, std::span<const int> to) {
    double worst = 0.0;
    for (int i : from) {
      double best = std::numeric_limits<double>::infinity();
      for (int j : to) best = std::min(best, cloud.dist(i, j));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return one_sided(e_indices, f_indices) + one_sided(f_indices, e_indices);
}

}  // namespace gmtk
