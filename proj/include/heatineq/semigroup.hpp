#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "heatineq/function.hpp"
#include "heatineq/graph.hpp"

namespace heatineq {

// Normalized Laplacian: (Lf)(x) = (1/m(x)) sum_y w_xy (f(y) - f(x)).
// Loops contribute nothing.
std::vector<double> laplacian_apply(const WeightedGraph& g,
                                    std::span<const double> f);

// One step of the random walk measured from the second argument:
// out(z) = sum_y in(y) p(y, z) with p(y, z) = w_yz / m(y).
void transition_step(const WeightedGraph& g, std::span<const double> in,
                     std::span<double> out);

// P applied to a function: (Pf)(x) = sum_y p(x, y) f(y).
void transition_apply(const WeightedGraph& g, std::span<const double> f,
                      std::span<double> out);

// Row of the continuous-time kernel: p(t, x, y) with its stored truncation
// error (total-variation bound from the Poisson tail).
struct ContinuousRow {
  double t = 0.0;
  std::vector<double> density;  // p(t, x, y)
  double tail_bound = 0.0;
  int truncation_order = 0;
};

// Cached kernel rows for one base vertex: discrete p_k(x, .) for k = 0..K and
// continuous rows at requested times.
struct HeatKernelTable {
  const WeightedGraph* graph = nullptr;
  int base = 0;
  std::vector<std::vector<double>> discrete;  // p_k(x, .), k = 0..K
  std::vector<ContinuousRow> continuous;

  int max_k() const { return static_cast<int>(discrete.size()) - 1; }
};

// p_k(x, .) for k = 0..K by repeated sparse application of the transition
// operator.  Boundary guard: K must stay below dist(x, boundary).
HeatKernelTable discrete_kernel(const WeightedGraph& g, int x, int K);

// Number of Poisson terms needed so that the tail mass is <= tol, and the
// realized tail bound.
int uniformization_order(double t, double tol, double* tail_out = nullptr);

// Continuous-time rows via uniformization: p(t,x,y) m(y) = e^-t sum t^k/k! p_k(x,y).
// Guard: the truncation order of the largest t must stay below dist(x, boundary).
HeatKernelTable continuous_kernel(const WeightedGraph& g, int x,
                                  std::span<const double> times, double tol);

// Adds continuous rows to an existing table (reuses / extends discrete rows).
void add_continuous_rows(HeatKernelTable& table, std::span<const double> times,
                         double tol);

// e^{t(P-I)} f via uniformization.  For boundary-marked graphs the truncation
// order must stay below the distance from supp(f) to the boundary.
std::vector<double> heat_apply(const WeightedGraph& g, std::span<const double> f,
                               double t, double tol = 1e-12);

struct UcNorms {
  double t = 0.0;
  double norm_1_inf = 0.0;  // sup_{x,y} p(t,x,y)
  double norm_2_inf = 0.0;  // sup_x sqrt(p(2t,x,x))
};

// Operator norms from kernel rows.  For vertex-transitive graphs one base
// vertex suffices; otherwise rows are built for every vertex (in parallel).
UcNorms uc_norms(const WeightedGraph& g, double t, double tol = 1e-12);

// sup_{x,y} p(t,x,y) for a grid of times; uses one row per time on
// vertex-transitive graphs and all rows otherwise.
std::vector<double> sup_kernel_continuous(const WeightedGraph& g,
                                          std::span<const double> times,
                                          double tol = 1e-12);

// sup_{x,y} p_k(x,y)/m(y) for k in [0, K].
std::vector<double> sup_kernel_discrete(const WeightedGraph& g, int K);

enum class KernelMode { discrete, continuous };

struct ExponentFit {
  KernelMode mode = KernelMode::discrete;
  std::vector<double> grid;        // k or t values
  std::vector<double> sup_values;  // measured sup of the normalized kernel
  std::vector<std::uint8_t> saturated;  // per grid point
  std::vector<double> window_grid;      // clean points actually fitted
  double amplitude = 0.0;   // C in sup <= C * s^-exponent
  double exponent = 0.0;
  std::vector<double> log_residuals;    // per clean point, fit minus data
  double max_abs_log_residual = 0.0;
  bool any_saturated = false;
};

// Log-log least squares of the sup kernel over a window.  Points where the
// sup is within a factor 2 of the finite-graph equilibrium are flagged as
// saturated and excluded; fewer than 4 clean points is an error.
ExponentFit exponent_fit(const WeightedGraph& g, KernelMode mode,
                         std::span<const double> window_grid, double tol = 1e-12);

// Simple least-squares line y = a + b x; returns {a, b}.
std::pair<double, double> linear_fit(std::span<const double> x,
                                     std::span<const double> y);

}  // namespace heatineq
