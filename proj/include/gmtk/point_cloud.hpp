#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gmtk {

/// Finite metric space with per-point mass weights, the discrete surrogate
/// for H^s restricted to a set. Points are either Euclidean coordinate
/// vectors or an explicit symmetric distance matrix.
///
/// atom_diameters[i] is the diameter of the generator cell the point stands
/// for (0 when the point is a true point, not a cell sample). Cover
/// diameters saturate at the atom scale so that contents below the
/// generation scale report the atom-cover value instead of collapsing to 0.
///
/// kappa_profile encodes the generator's content-comparability constant as
/// a step function of the cover cap delta: for delta <= delta_max of an
/// entry, mass/kappa is a certified lower bound for H^s_delta. Empty means
/// no mass-distribution bound is available.
struct PointCloud {
  std::vector<std::vector<double>> coords;       // empty when matrix form
  std::vector<std::vector<double>> dist_matrix;  // empty when coords form
  std::vector<double> weights;
  std::vector<double> atom_diameters;  // may be empty -> all zero
  double s = 1.0;
  std::string label;
  std::vector<std::pair<double, double>> kappa_profile;  // (delta_max, kappa), sorted

  std::size_t size() const { return weights.size(); }
  bool has_coords() const { return !coords.empty(); }

  double dist(int i, int j) const;
  double atom(int i) const { return atom_diameters.empty() ? 0.0 : atom_diameters[i]; }
  double total_mass() const;
  double mass(std::span<const int> indices) const;
  double diameter() const;
  double min_atom() const;

  /// Certified comparability constant at cover cap delta, or 0 when the
  /// mass-distribution bound is unavailable at that cap.
  double kappa(double delta) const;

  /// Declared cover diameter of a point subset: max pairwise distance
  /// extended by half an atom at each end; a singleton costs its atom.
  double cover_diameter(std::span<const int> indices) const;
};

/// Validating constructors. Reject negative weights, length mismatches and
/// (matrix form) asymmetric or non-metric inputs, naming the offending index.
PointCloud build_point_cloud(std::vector<std::vector<double>> coords,
                             std::vector<double> weights, double s,
                             std::string label = {});
PointCloud build_point_cloud_from_matrix(std::vector<std::vector<double>> matrix,
                                         std::vector<double> weights, double s,
                                         std::string label = {});

/// Fixed-order Kahan-compensated sum; the reproducibility primitive used by
/// every reduction in the library.
double kahan_sum(std::span<const double> values);

}  // namespace gmtk
