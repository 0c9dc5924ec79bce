#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "heatineq/graph.hpp"

namespace heatineq {

// Seeded generator of nonnegative test functions used to probe the
// functional inequalities: ball indicators, heat-kernel columns, distance
// bumps, Dirichlet eigenfunctions, seeded random positives and perturbed
// constants.  On boundary-marked graphs every member vanishes on the
// boundary.
struct FamilySpec {
  std::string name = "standard";  // or one of the six kinds, or "constants"
  int heat_times = 8;             // columns at log-spaced times
  double t_min = 0.25, t_max = 32.0;
  int max_ball_radius = 6;
  int bumps = 6;
  int randoms = 12;
  int perturbed = 6;
  int centers = 2;  // base vertices to use
  std::uint64_t seed = 1;
};

struct FamilyMember {
  std::string label;
  std::vector<double> values;  // nonnegative, not identically zero
};

struct FunctionFamily {
  const WeightedGraph* graph = nullptr;
  std::vector<FamilyMember> members;
};

FunctionFamily make_family(const WeightedGraph& g, const FamilySpec& spec);

// Members pushed forward by the heat semigroup at the given times (the
// family stays closed along trajectories, which the Nash chains need).
void extend_with_trajectories(FunctionFamily& family,
                              std::span<const double> times, double tol = 1e-12);

}  // namespace heatineq
