#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gmtk/point_cloud.hpp"

namespace gmtk {

/// Closed ball given by a cloud point index and a radius. By convention
/// diam B(x,r) = 2r.
struct Ball {
  int center = 0;
  double radius = 0.0;
};

/// Maximal separated net: members pairwise >= separation apart, every cloud
/// point within separation of some member.
struct Net {
  int scale_index = 0;
  double separation = 0.0;
  std::vector<int> members;
};

struct NetHierarchy {
  std::vector<Net> nets;  // scale_index = n_min .. n_max, separation 2^-n
  bool nested = false;
};

/// Greedy sweep: admit a point iff >= separation from all admitted points.
/// order_seed 0 sweeps in ascending index order, otherwise in a seeded
/// permutation. seed_members are admitted first (used for nested nets) and
/// must themselves be separated.
Net greedy_maximal_net(const PointCloud& cloud, double separation,
                       std::uint64_t order_seed = 0,
                       std::span<const int> seed_members = {});

NetHierarchy build_net_hierarchy(const PointCloud& cloud, int n_min, int n_max,
                                 bool nested, std::uint64_t order_seed = 0);

/// Max over sampled balls B(x,r), r in scale_list, of the size of a greedy
/// (r/2)-net of the ball's members: an upper-bound witness for the doubling
/// constant C.
double estimate_doubling_constant(const PointCloud& cloud,
                                  std::span<const double> scale_list);

/// Normalized two-set distance (2/diam B) * max of the two one-sided sup
/// distances, computed over the closed-ball intersections. Throws when
/// either set misses B.
double set_distance_normalized(std::span<const int> e_indices,
                               std::span<const int> f_indices, const Ball& ball,
                               const PointCloud& cloud);

/// True iff members are pairwise >= separation apart and every cloud point
/// is within separation of some member (both checked exhaustively).
bool net_invariants_hold(const PointCloud& cloud, const Net& net);

}  // namespace gmtk
