#include "heatineq/family.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heatineq/inequality.hpp"
#include "heatineq/rng.hpp"
#include "heatineq/semigroup.hpp"

namespace heatineq {

namespace {

bool is_zero(const std::vector<double>& v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

// Interior centers: prefer vertices far from the boundary.
std::vector<int> pick_centers(const WeightedGraph& g, int count, Rng& rng) {
  std::vector<int> centers;
  if (!g.has_boundary()) {
    centers.push_back(0);
    if (count > 1 && g.size() > 3) centers.push_back(g.size() / 3);
    while (static_cast<int>(centers.size()) < count)
      centers.push_back(static_cast<int>(rng.below(static_cast<std::uint64_t>(g.size()))));
  } else {
    int best = 0;
    for (int x = 1; x < g.size(); ++x)
      if (g.dist_to_boundary(x) > g.dist_to_boundary(best)) best = x;
    centers.push_back(best);
    for (int k = 1; k < count; ++k) {
      // deterministic nearby interior pick
      auto nb = g.neighbors(centers.back());
      int alt = centers.back();
      for (int y : nb)
        if (y != alt && g.dist_to_boundary(y) >= g.dist_to_boundary(alt) - 1 &&
            g.dist_to_boundary(y) > 2) {
          alt = y;
          break;
        }
      centers.push_back(alt);
    }
  }
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  return centers;
}

void zero_boundary(const WeightedGraph& g, std::vector<double>& f) {
  if (!g.has_boundary()) return;
  for (int x = 0; x < g.size(); ++x)
    if (g.boundary[x]) f[static_cast<size_t>(x)] = 0.0;
}

}  // namespace

FunctionFamily make_family(const WeightedGraph& g, const FamilySpec& spec) {
  FunctionFamily fam;
  fam.graph = &g;
  Rng rng(spec.seed);
  const int n = g.size();
  auto add = [&](std::string label, std::vector<double> v) {
    zero_boundary(g, v);
    if (!is_zero(v)) fam.members.push_back({std::move(label), std::move(v)});
  };
  const bool all = spec.name == "standard";
  if (spec.name == "constants") {
    fam.members.push_back({"constant", std::vector<double>(static_cast<size_t>(n), 1.0)});
    return fam;
  }

  auto centers = pick_centers(g, spec.centers, rng);

  if (all || spec.name == "ball-indicators") {
    for (int c : centers) {
      int guard = g.dist_to_boundary(c);
      int r_hi = std::min(spec.max_ball_radius, guard - 1);
      for (int r = 0; r <= r_hi; ++r) {
        auto b = ball(g, c, r);
        std::vector<double> v(static_cast<size_t>(n), 0.0);
        for (int y : b.members) v[static_cast<size_t>(y)] = 1.0;
        add("indicator(c=" + std::to_string(c) + ",r=" + std::to_string(r) + ")",
            std::move(v));
      }
    }
  }
  if (all || spec.name == "heat-columns") {
    for (int c : centers) {
      for (int i = 0; i < spec.heat_times; ++i) {
        double t = spec.t_min *
                   std::pow(spec.t_max / spec.t_min,
                            spec.heat_times == 1
                                ? 0.0
                                : static_cast<double>(i) / (spec.heat_times - 1));
        int guard = g.dist_to_boundary(c);
        if (g.has_boundary() && uniformization_order(t, 1e-12) >= guard) continue;
        auto table = continuous_kernel(g, c, std::span<const double>(&t, 1), 1e-12);
        add("heat-column(c=" + std::to_string(c) + ",t=" + std::to_string(t) + ")",
            table.continuous[0].density);
      }
    }
  }
  if (all || spec.name == "gaussian-bumps") {
    for (int c : centers) {
      auto dist = bfs_distances(g, c);
      for (int i = 0; i < spec.bumps; ++i) {
        double a = 0.05 * std::pow(40.0, spec.bumps == 1
                                             ? 0.0
                                             : static_cast<double>(i) / (spec.bumps - 1));
        std::vector<double> v(static_cast<size_t>(n), 0.0);
        for (int y = 0; y < n; ++y) {
          double d = static_cast<double>(dist[static_cast<size_t>(y)]);
          if (dist[static_cast<size_t>(y)] != std::numeric_limits<int>::max())
            v[static_cast<size_t>(y)] = std::exp(-a * d * d);
        }
        add("bump(c=" + std::to_string(c) + ",a=" + std::to_string(a) + ")",
            std::move(v));
      }
    }
  }
  if (all || spec.name == "dirichlet-eigenvectors") {
    for (int c : centers) {
      int guard = g.dist_to_boundary(c);
      for (int r : {2, 4}) {
        if (r >= guard) continue;
        auto b = ball(g, c, r);
        if (static_cast<int>(b.members.size()) >= n) continue;  // no Dirichlet boundary
        auto res = dirichlet_lambda1(g, b);
        add("dirichlet-ef(c=" + std::to_string(c) + ",r=" + std::to_string(r) + ")",
            std::move(res.eigenfunction));
      }
    }
  }
  if (all || spec.name == "random-positive") {
    for (int i = 0; i < spec.randoms; ++i) {
      double sigma = (i % 3 == 0) ? 0.5 : (i % 3 == 1 ? 1.0 : 2.0);
      std::vector<double> v(static_cast<size_t>(n));
      for (int y = 0; y < n; ++y) v[static_cast<size_t>(y)] = std::exp(sigma * rng.normal());
      add("random-positive(" + std::to_string(i) + ")", std::move(v));
    }
  }
  if (all || spec.name == "perturbed-constants") {
    for (int i = 0; i < spec.perturbed; ++i) {
      double delta = (i == 0) ? 0.0 : 0.4 * i / spec.perturbed;
      std::vector<double> v(static_cast<size_t>(n));
      for (int y = 0; y < n; ++y)
        v[static_cast<size_t>(y)] = std::max(0.05, 1.0 + delta * rng.normal());
      add("perturbed-constant(" + std::to_string(i) + ")", std::move(v));
    }
  }
  if (fam.members.empty())
    throw std::invalid_argument("family '" + spec.name + "' produced no members");
  return fam;
}

void extend_with_trajectories(FunctionFamily& family, std::span<const double> times,
                              double tol) {
  const WeightedGraph& g = *family.graph;
  const size_t base_count = family.members.size();
  for (size_t i = 0; i < base_count; ++i) {
    for (double t : times) {
      auto v = heat_apply(g, family.members[i].values, t, tol);
      family.members.push_back(
          {family.members[i].label + "@t=" + std::to_string(t), std::move(v)});
    }
  }
}

}  // namespace heatineq
