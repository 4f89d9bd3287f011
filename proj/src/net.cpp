#include "gmtk/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

namespace gmtk {

Net greedy_maximal_net(const PointCloud& cloud, double separation,
                       std::uint64_t order_seed, std::span<const int> seed_members) {
  if (!(separation > 0.0)) throw std::invalid_argument("net: separation must be positive");
  std::size_t n = cloud.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (order_seed != 0) {
    std::mt19937_64 rng(order_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  Net net;
  net.separation = separation;
  net.members.assign(seed_members.begin(), seed_members.end());
  std::vector<char> admitted(n, 0);
  for (int m : net.members) admitted[m] = 1;
  for (int p : order) {
    if (admitted[p]) continue;
    bool ok = true;
    for (int m : net.members) {
      if (cloud.dist(p, m) < separation) {
        ok = false;
        break;
      }
    }
    if (ok) {
      net.members.push_back(p);
      admitted[p] = 1;
    }
  }
  return net;
}

NetHierarchy build_net_hierarchy(const PointCloud& cloud, int n_min, int n_max,
                                 bool nested, std::uint64_t order_seed) {
  if (n_min > n_max) throw std::invalid_argument("net hierarchy: n_min > n_max");
  NetHierarchy h;
  h.nested = nested;
  std::vector<int> previous;
  for (int n = n_min; n <= n_max; ++n) {
    double sep = std::ldexp(1.0, -n);
    Net net = nested ? greedy_maximal_net(cloud, sep, order_seed, previous)
                     : greedy_maximal_net(cloud, sep, order_seed);
    net.scale_index = n;
    if (nested) previous = net.members;
    h.nets.push_back(std::move(net));
  }
  return h;
}

double estimate_doubling_constant(const PointCloud& cloud,
                                  std::span<const double> scale_list) {
  if (cloud.size() == 0) throw std::invalid_argument("doubling: empty cloud");
  if (scale_list.empty()) throw std::invalid_argument("doubling: empty scale list");
  std::size_t witness = 1;
  for (double r : scale_list) {
    for (std::size_t x = 0; x < cloud.size(); ++x) {
      // greedy cover of the ball members by (r/2)-balls, ascending index
      // order; the pick count witnesses the doubling constant
      std::vector<int> members;
      for (std::size_t p = 0; p < cloud.size(); ++p)
        if (cloud.dist(int(x), int(p)) <= r) members.push_back(int(p));
      std::vector<char> covered(members.size(), 0);
      std::size_t picks = 0;
      for (std::size_t i = 0; i < members.size(); ++i) {
        if (covered[i]) continue;
        // center the covering ball on the candidate that covers the most
        // still-uncovered members (the ball must cover the current point)
        std::size_t pick = i;
        std::size_t best = 0;
        for (std::size_t k = 0; k < members.size(); ++k) {
          if (cloud.dist(members[i], members[k]) > r / 2.0) continue;
          std::size_t gain = 0;
          for (std::size_t m = 0; m < members.size(); ++m)
            if (!covered[m] && cloud.dist(members[k], members[m]) <= r / 2.0)
              ++gain;
          if (gain > best) {
            best = gain;
            pick = k;
          }
        }
        ++picks;
        for (std::size_t k = i; k < members.size(); ++k)
          if (!covered[k] && cloud.dist(members[pick], members[k]) <= r / 2.0)
            covered[k] = 1;
      }
      witness = std::max(witness, picks);
    }
  }
  return double(witness);
}

double set_distance_normalized(std::span<const int> e_indices,
                               std::span<const int> f_indices, const Ball& ball,
                               const PointCloud& cloud) {
  auto in_ball = [&](int p) { return cloud.dist(p, ball.center) <= ball.radius; };
  auto one_sided = [&](std::span<const int> from, std::span<const int> to) {
    double sup = -1.0;
    for (int p : from) {
      if (!in_ball(p)) continue;
      double best = std::numeric_limits<double>::infinity();
      for (int q : to) best = std::min(best, cloud.dist(p, q));
      sup = std::max(sup, best);
    }
    return sup;  // -1 when `from` misses the ball
  };
  double ef = one_sided(e_indices, f_indices);
  double fe = one_sided(f_indices, e_indices);
  if (ef < 0.0 || fe < 0.0)
    throw std::domain_error("set distance: a set misses the ball, distance undefined");
  return (2.0 / (2.0 * ball.radius)) * std::max(ef, fe);
}

bool net_invariants_hold(const PointCloud& cloud, const Net& net) {
  for (std::size_t a = 0; a < net.members.size(); ++a)
    for (std::size_t b = a + 1; b < net.members.size(); ++b)
      if (cloud.dist(net.members[a], net.members[b]) < net.separation) return false;
  for (std::size_t p = 0; p < cloud.size(); ++p) {
    bool covered = false;
    for (int m : net.members)
      if (cloud.dist(int(p), m) <= net.separation) {
        covered = true;
        break;
      }
    if (!covered) return false;
  }
  return true;
}

}  // namespace gmtk
