#include "gmtk/martingale.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "gmtk/content.hpp"

namespace gmtk {

std::vector<int> select_high_content_cubes(const CubeTree& tree, const PointCloud& cloud,
                                           double s, double epsilon, double cap_factor) {
  const double alpha = 1.0 + epsilon / 4.0;
  std::vector<int> out;
  for (const Cube& q : tree.cubes) {
    double diam = cube_diameter(tree, cloud, q.id);
    if (diam <= 0.0) continue;
    double kappa = cloud.kappa(cap_factor * diam);
    if (kappa <= 0.0) continue;
    double lower = cloud.mass(q.members) / kappa;
    if (lower >= alpha * std::pow(diam, s)) out.push_back(q.id);
  }
  return out;
}

namespace {

// Maximal selected cubes strictly below q, found by stopping each
// tree-descendant branch at its first selected cube.
void collect_stops(const CubeTree& tree, const std::vector<char>& selected, int q,
                   std::vector<int>& out) {
  for (int child : tree.cube(q).children) {
    if (selected[child])
      out.push_back(child);
    else
      collect_stops(tree, selected, child, out);
  }
}

}  // namespace

StopForest build_stop_forest(const CubeTree& tree, const PointCloud& cloud, double s,
                             const std::vector<int>& family) {
  StopForest f;
  f.s = s;
  f.family = family;
  std::sort(f.family.begin(), f.family.end());
  const std::size_t n = tree.cubes.size();
  f.selected.assign(n, 0);
  for (int id : f.family) f.selected[id] = 1;
  f.stops.assign(n, {});
  f.region.assign(n, {});
  f.diam.assign(n, 0.0);
  f.mass.assign(n, 0.0);
  f.m.assign(n, 0.0);

  for (int id : f.family) {
    const Cube& q = tree.cube(id);
    collect_stops(tree, f.selected, id, f.stops[id]);
    std::vector<char> stopped(q.members.size(), 0);
    for (int r : f.stops[id]) {
      // members are sorted in both cubes
      std::size_t pos = 0;
      for (int x : tree.cube(r).members) {
        while (pos < q.members.size() && q.members[pos] < x) ++pos;
        if (pos < q.members.size() && q.members[pos] == x) stopped[pos] = 1;
      }
    }
    for (std::size_t i = 0; i < q.members.size(); ++i)
      if (!stopped[i]) f.region[id].push_back(q.members[i]);
    f.diam[id] = cube_diameter(tree, cloud, id);
    f.mass[id] = cloud.mass(q.members);
    std::vector<double> terms;
    terms.push_back(cloud.mass(f.region[id]));
    for (int r : f.stops[id]) terms.push_back(std::pow(f.diam[r], s));
    std::sort(terms.begin(), terms.end());
    f.m[id] = kahan_sum(terms);
  }

  for (int id : f.family) {
    bool has_selected_ancestor = false;
    for (int p = tree.cube(id).parent; p != -1; p = tree.cube(p).parent)
      if (f.selected[p]) {
        has_selected_ancestor = true;
        break;
      }
    if (!has_selected_ancestor) f.tops.push_back(id);
  }
  return f;
}

namespace {

int chain_depth(const StopForest& f, int q) {
  int best = 0;
  for (int r : f.stops[q]) best = std::max(best, 1 + chain_depth(f, r));
  return best;
}

// Writes the stage-k weight below cube q given the accumulated lambda
// prefix; branches not yet expanded keep their flat density.
void fill_stage(const StopForest& f, const CubeTree& tree, int q, int remaining,
                double prefix, double s, std::vector<double>& values) {
  if (remaining == 0) {
    double flat = std::pow(f.diam[q], s) / f.mass[q];
    for (int x : tree.cube(q).members) values[x] = prefix * flat;
    return;
  }
  double lambda = std::pow(f.diam[q], s) / f.m[q];
  for (int x : f.region[q]) values[x] = prefix * lambda;
  for (int r : f.stops[q]) fill_stage(f, tree, r, remaining - 1, prefix * lambda, s, values);
}

void fill_depths(const StopForest& f, const CubeTree& tree, int q, int depth,
                 std::vector<int>& depth_at) {
  for (int x : f.region[q]) depth_at[x] = depth;
  for (int r : f.stops[q]) fill_depths(f, tree, r, depth + 1, depth_at);
}

void check_mass_hypothesis(const StopForest& f, double alpha, int q) {
  if (f.m[q] < alpha * std::pow(f.diam[q], f.s))
    throw std::runtime_error("build_weight_sequence: cube " + std::to_string(q) +
                             " has m(Q) = " + std::to_string(f.m[q]) +
                             " below alpha*(diam Q)^s = " +
                             std::to_string(alpha * std::pow(f.diam[q], f.s)));
  for (int r : f.stops[q]) check_mass_hypothesis(f, alpha, r);
}

}  // namespace

WeightSequence build_weight_sequence(const CubeTree& tree, const PointCloud& cloud,
                                     const StopForest& forest, int top, double alpha) {
  if (top < 0 || !forest.selected[top])
    throw std::invalid_argument("build_weight_sequence: top must be a selected cube");
  if (forest.mass[top] <= 0.0)
    throw std::runtime_error("build_weight_sequence: top cube carries no mass");
  check_mass_hypothesis(forest, alpha, top);

  WeightSequence seq;
  seq.top = top;
  seq.alpha = alpha;
  seq.depth_at.assign(cloud.size(), -1);
  fill_depths(forest, tree, top, 0, seq.depth_at);

  int depth = chain_depth(forest, top);
  for (int k = 0; k <= depth; ++k) {
    WeightStage st;
    st.stage = k;
    st.values.assign(cloud.size(), 0.0);
    fill_stage(forest, tree, top, k, 1.0, forest.s, st.values);
    seq.stages.push_back(std::move(st));
  }
  return seq;
}

PackingBoundReport packing_bound_via_weights(const CubeTree&, const PointCloud& cloud,
                                             const StopForest& forest, double alpha,
                                             int n_families, int j_levels) {
  PackingBoundReport out;
  std::vector<double> lhs_terms;
  for (int id : forest.family) lhs_terms.push_back(std::pow(forest.diam[id], forest.s));
  std::sort(lhs_terms.begin(), lhs_terms.end());
  out.lhs = kahan_sum(lhs_terms);

  std::vector<double> top_masses;
  for (int t : forest.tops) top_masses.push_back(forest.mass[t]);
  std::sort(top_masses.begin(), top_masses.end());
  double geo = alpha / (alpha - 1.0);
  out.per_top_bound = geo * kahan_sum(top_masses);
  out.global_bound = double(n_families) * double(j_levels) * geo * cloud.total_mass();
  out.holds_per_top = out.lhs <= out.per_top_bound * (1.0 + 1e-12);
  out.holds_global = out.lhs <= out.global_bound * (1.0 + 1e-12);
  return out;
}

void write_weights_csv(std::ostream& os, const WeightSequence& seq,
                       const PointCloud& cloud) {
  os.precision(17);
  os << "cube_id,stage,cell,cell_mass,value\n";
  for (const WeightStage& st : seq.stages)
    for (std::size_t x = 0; x < st.values.size(); ++x)
      if (st.values[x] != 0.0)
        os << seq.top << ',' << st.stage << ',' << x << ',' << cloud.weights[x] << ','
           << st.values[x] << '\n';
}

}  // namespace gmtk
