#pragma once

#include <span>
#include <vector>

#include "heatineq/graph.hpp"
#include "heatineq/semigroup.hpp"

namespace heatineq::reference {

// Plain serial implementations of the parallel kernels, kept as the
// comparison baseline for tests and the benchmark.  They use dense
// row-major transition matrices and straightforward loops.

// Dense row-stochastic transition matrix p(x, y).
std::vector<std::vector<double>> dense_transition(const WeightedGraph& g);

// p_k(x, .) for k = 0..K via dense row-vector products.
std::vector<std::vector<double>> discrete_rows_dense(const WeightedGraph& g, int x,
                                                     int K);

// sup_{x,y} p_k(x,y)/m(y), all base vertices, serial.
std::vector<double> sup_kernel_discrete_serial(const WeightedGraph& g, int K);

// sup_{x,y} p(t,x,y) over a time grid, all base vertices, serial.
std::vector<double> sup_kernel_continuous_serial(const WeightedGraph& g,
                                                 std::span<const double> times,
                                                 double tol = 1e-12);

UcNorms uc_norms_serial(const WeightedGraph& g, double t, double tol = 1e-12);

}  // namespace heatineq::reference
