#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gmtk/content.hpp"
#include "gmtk/point_cloud.hpp"

namespace gmtk {

/// Monotone nonnegative set function on cloud-point index sets (vanishing
/// on the empty set), the integrator for the layer-cake functional.
struct MonotoneSetFunction {
  std::string name;
  std::function<double(const std::vector<int>&)> eval;
};

/// Additive backend: plain mass.
MonotoneSetFunction mass_set_function(const PointCloud& cloud);
/// Greedy content upper value at cover cap delta.
MonotoneSetFunction greedy_content_set_function(const PointCloud& cloud, double s,
                                                double delta);
/// Exact oracle content (small regions only; throws past its caps).
MonotoneSetFunction oracle_content_set_function(const PointCloud& cloud, double s,
                                                double delta);
/// Exact capped 1D content of the cells behind the indices (s = 1 interval
/// clouds; cells[i] is the generator cell point i samples).
MonotoneSetFunction interval_content_set_function(const std::vector<DyadicInterval>& cells,
                                                  const std::optional<Dyadic>& delta);

/// Asymmetric Choquet integral of f (given per cloud point) against mu:
/// int_0^inf mu(f > t) dt + int_{-inf}^0 (mu(f > t) - mu(all)) dt, computed
/// exactly over the finitely many level sets.
double choquet_integral(const MonotoneSetFunction& mu, std::span<const double> f,
                        std::size_t n_points);

struct QuasiSubadditivityCheck {
  double lhs = 0.0;  // integral of f + g
  double rhs = 0.0;  // (1/gamma) int f + (1/(1-gamma)) int g
  bool holds = false;
};

/// The split bound int(f+g) <= (1/gamma) int f + (1/(1-gamma)) int g, valid
/// for subadditive mu and gamma in (0,1); f, g must be nonnegative.
QuasiSubadditivityCheck check_quasi_subadditivity(const MonotoneSetFunction& mu,
                                                  std::span<const double> f,
                                                  std::span<const double> g, double gamma,
                                                  std::size_t n_points);

struct SeparatedAdditivityCheck {
  double joint = 0.0;
  double split = 0.0;  // mu(E) + mu(F)
  double gap = 0.0;    // |joint - split|
};

/// Additivity of a capped content across carriers at distance >= 2*rho when
/// the cap is <= 2*rho: no admissible cover piece can touch both carriers.
/// Throws when the separation precondition fails, naming the closest pair.
SeparatedAdditivityCheck check_separated_additivity(const PointCloud& cloud,
                                                    const MonotoneSetFunction& mu,
                                                    const std::vector<int>& e_indices,
                                                    const std::vector<int>& f_indices,
                                                    double rho);

/// Unnormalized two-set support distance: sum of the two one-sided sup
/// distances between the index sets.
double support_distance(const PointCloud& cloud, std::span<const int> e_indices,
                        std::span<const int> f_indices);

}  // namespace gmtk
