#include "gmtk/carleson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace gmtk {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> point_coord(const PointCloud& cloud, int i) {
  return cloud.coords[i];
}

// One-sided bad-pair test: scans witnesses (y, t) with y a cloud point in
// B(x, r) (x itself first) and t on the dyadic sub-grid r*m/2^G, largest t
// first. A hit certifies the pair; a miss certifies nothing. Without an
// exact 1D form the scan is truncated (thinned witness centers, bounded
// greedy regions), which only makes it miss more.
bool pair_is_bad(const GeneratedSet& set, int x, double r, double epsilon, int grid_log,
                 PairGrid::Witness* witness) {
  const PointCloud& cloud = set.cloud;
  const double s = cloud.s;
  const double eps_term = epsilon * std::pow(2.0 * r, s);
  const int steps = 1 << grid_log;
  const bool exact_1d = set.intervals && s == 1.0 && cloud.has_coords() &&
                        cloud.coords[0].size() == 1;
  constexpr std::size_t kGreedyRegionCap = 160;

  std::vector<int> candidates = ball_members(cloud, Ball{x, r});
  if (!exact_1d && candidates.size() > 32) {
    // thin to an (r/4)-separated subset, keeping x first
    std::vector<int> thinned{x};
    for (int p : candidates) {
      bool ok = true;
      for (int m : thinned)
        if (cloud.dist(p, m) < r / 4.0) {
          ok = false;
          break;
        }
      if (ok) thinned.push_back(p);
    }
    candidates = std::move(thinned);
  } else {
    auto self = std::find(candidates.begin(), candidates.end(), x);
    if (self != candidates.end()) std::iter_swap(candidates.begin(), self);
  }

  for (int y : candidates) {
    std::vector<double> yc = point_coord(cloud, y);
    for (int m = steps - 1; m >= 1; --m) {
      double t = r * double(m) / double(steps);
      double threshold = std::pow(2.0 * t, s) - eps_term;
      if (threshold <= 0.0) break;  // smaller t only shrinks the threshold
      double upper;
      if (exact_1d) {
        Dyadic c = dyadic_from_double(yc[0]);
        Dyadic rad = dyadic_from_double(t);
        upper = interval_content_exact_in_window(*set.intervals, c - rad, c + rad)
                    .to_double();
      } else {
        std::vector<int> region = ball_members_at(cloud, yc, t);
        if (region.empty())
          upper = 0.0;
        else if (region.size() > kGreedyRegionCap)
          continue;
        else
          upper = content_greedy(cloud, region, s, kInf).upper_bound;
      }
      if (upper < threshold) {
        if (witness) *witness = {y, t, upper, threshold};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::size_t PairGrid::flagged_count() const {
  std::size_t n = 0;
  for (const auto& row : flags)
    for (char f : row) n += (f != 0);
  return n;
}

PairGrid make_pair_grid(const PointCloud& cloud, double r_min, double r_max) {
  if (!(r_min > 0.0) || r_max < r_min)
    throw std::invalid_argument("make_pair_grid: need 0 < r_min <= r_max");
  PairGrid grid;
  grid.xs.resize(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) grid.xs[i] = int(i);
  for (double r = r_max; r >= r_min * (1.0 - 1e-12); r *= 0.5) grid.radii.push_back(r);
  grid.flags.assign(grid.xs.size(), std::vector<char>(grid.radii.size(), 0));
  grid.witnesses.assign(grid.xs.size(),
                        std::vector<PairGrid::Witness>(grid.radii.size()));
  return grid;
}

PairGrid wld_bad_pairs(const GeneratedSet& set, double epsilon, PairGrid grid,
                       int witness_grid_log, int threads) {
  if (!set.cloud.has_coords())
    throw std::invalid_argument("wld_bad_pairs: cloud must carry coordinates");
  const std::size_t nx = grid.xs.size();
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t ix = begin; ix < end; ++ix) {
      for (std::size_t ir = 0; ir < grid.radii.size(); ++ir) {
        PairGrid::Witness w;
        if (pair_is_bad(set, grid.xs[ix], grid.radii[ir], epsilon, witness_grid_log,
                        &w)) {
          grid.flags[ix][ir] = 1;
          grid.witnesses[ix][ir] = w;
        }
      }
    }
  };
  int nthreads = std::max(1, threads);
  if (nthreads == 1 || nx < 2) {
    work(0, nx);
  } else {
    // Rows are independent; a fixed block split keeps the result identical
    // to the serial order.
    std::vector<std::thread> pool;
    std::size_t block = (nx + nthreads - 1) / nthreads;
    for (std::size_t b = 0; b < nx; b += block)
      pool.emplace_back(work, b, std::min(nx, b + block));
    for (auto& t : pool) t.join();
  }
  return grid;
}

double carleson_integral_at(const PairGrid& grid, const PointCloud& cloud, int x_index,
                            double r_max, double r_min) {
  const double ln2 = std::log(2.0);
  std::vector<int> inside = ball_members(cloud, Ball{x_index, r_max});
  std::vector<double> level_masses;
  for (std::size_t ir = 0; ir < grid.radii.size(); ++ir) {
    double r = grid.radii[ir];
    // r represents the slab (r, 2r]; the top level r_max is the slab cap,
    // not a slab of its own.
    if (r >= r_max * (1.0 - 1e-12)) continue;
    if (r < r_min * (1.0 - 1e-12)) continue;
    std::vector<double> masses;
    for (int i : inside)
      if (grid.flags[i][ir]) masses.push_back(cloud.weights[i]);
    level_masses.push_back(ln2 * kahan_sum(masses));
  }
  return kahan_sum(level_masses);
}

double carleson_norm(const PairGrid& grid, const PointCloud& cloud, double d,
                     double r_min, double r_max) {
  double best = 0.0;
  for (int x : grid.xs) {
    double v = carleson_integral_at(grid, cloud, x, r_max, r_min) / std::pow(r_max, d);
    best = std::max(best, v);
  }
  return best;
}

std::size_t CubeClassification::count(CubeLabel l) const {
  std::size_t n = 0;
  for (CubeLabel x : labels) n += (x == l);
  return n;
}

CubeClassification classify_cubes(const CubeTree& tree, const GeneratedSet& set, double A,
                                  double epsilon, double rho, int witness_grid_log) {
  if (tree.kind != CubeKind::christ_david)
    throw std::invalid_argument("classify_cubes: expects a christ-david tree");
  const PointCloud& cloud = set.cloud;
  const double d = cloud.s;
  CubeClassification out;
  out.A = A;
  out.epsilon = epsilon;
  out.rho = rho;
  out.labels.assign(tree.cubes.size(), CubeLabel::G);
  out.b1_witnesses.assign(tree.cubes.size(), {});

  for (const Cube& q : tree.cubes) {
    double r_q = 3.0 * q.scale;
    double a_r = A * r_q;

    // B2: certified lower bound of H^d_{rho r_Q}(X cap A B_Q) above the
    // high-density threshold.
    bool b2 = false;
    double kappa = cloud.kappa(rho * r_q);
    if (kappa > 0.0) {
      std::vector<int> wide = ball_members(cloud, Ball{q.center, a_r});
      double lower = cloud.mass(wide) / kappa;
      b2 = lower > (1.0 + epsilon) * std::pow(2.0 * a_r, d);
    }

    // B1: low-density witness inside A B_Q via the certified upper bound.
    PairGrid::Witness w;
    bool b1 = pair_is_bad(set, q.center, a_r, epsilon, witness_grid_log, &w);
    if (b1) out.b1_witnesses[q.id] = w;

    if (b1 && b2)
      out.labels[q.id] = CubeLabel::B1_and_B2;
    else if (b1)
      out.labels[q.id] = CubeLabel::B1;
    else if (b2)
      out.labels[q.id] = CubeLabel::B2;
  }
  return out;
}

PackingSum packing_sum(const CubeTree& tree, const std::vector<int>& cube_subset,
                       int root_id, double d) {
  const Cube& root = tree.cube(root_id);
  std::vector<double> terms;
  for (int id : cube_subset) {
    const Cube& q = tree.cube(id);
    bool contained = std::includes(root.members.begin(), root.members.end(),
                                   q.members.begin(), q.members.end());
    if (contained) terms.push_back(std::pow(q.scale, d));
  }
  PackingSum out;
  std::sort(terms.begin(), terms.end());
  out.sum = kahan_sum(terms);
  out.ratio = out.sum / std::pow(root.scale, d);
  return out;
}

TheoremMainReport theorem_main_sum(const PointCloud& cloud, double s, double A,
                                   double epsilon, double rho,
                                   const NetHierarchy& hierarchy) {
  TheoremMainReport out;
  out.total_mass = cloud.total_mass();
  std::vector<double> terms;
  for (const Net& net : hierarchy.nets) {
    double r = net.separation;
    double kappa = cloud.kappa(rho * r);
    if (kappa <= 0.0) continue;  // no certified lower bound at this cap
    double threshold = (1.0 + epsilon) * std::pow(2.0 * r, s);
    for (int x : net.members) {
      std::vector<int> wide = ball_members(cloud, Ball{x, A * r});
      double lower = cloud.mass(wide) / kappa;
      if (lower > threshold) {
        out.bad_balls.emplace_back(net.scale_index, Ball{x, r});
        terms.push_back(std::pow(r, s));
      }
    }
  }
  std::sort(terms.begin(), terms.end());
  out.sum = kahan_sum(terms);
  out.ratio = out.total_mass > 0.0 ? out.sum / out.total_mass : 0.0;
  return out;
}

std::vector<CounterexampleRow> counterexample_scan(const std::vector<int>& n_list,
                                                   double epsilon, double R,
                                                   double x_center,
                                                   bool* epsilon_warning) {
  if (epsilon_warning) *epsilon_warning = (epsilon >= 1.0 / 3.0);
  std::vector<CounterexampleRow> rows;
  for (int n : n_list) {
    FractalSpec spec;
    spec.kind = FractalKind::every_other_dyadic;
    spec.depth = n;
    GeneratedSet set = generate_fractal(spec);
    const PointCloud& cloud = set.cloud;

    double r_min = std::ldexp(1.0, -n);
    PairGrid grid = wld_bad_pairs(set, epsilon, make_pair_grid(cloud, r_min, R));

    int xi = 0;
    for (std::size_t i = 1; i < cloud.size(); ++i)
      if (std::abs(cloud.coords[i][0] - x_center) <
          std::abs(cloud.coords[xi][0] - x_center))
        xi = int(i);

    CounterexampleRow row;
    row.n = n;
    row.pairs = grid.xs.size() * grid.radii.size();
    row.flagged = grid.flagged_count();
    row.fully_flagged = (row.flagged == row.pairs);
    row.sampled_integral = carleson_integral_at(grid, cloud, xi, R, r_min);

    // Closed form of the band integral: (flagged mass in B) * ln(R 2^n),
    // since the whole band (2^-n, R) is flagged with constant mass.
    std::vector<int> inside = ball_members(cloud, Ball{xi, R});
    row.exact_integral = cloud.mass(inside) * std::log(R * std::ldexp(1.0, n));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gmtk
