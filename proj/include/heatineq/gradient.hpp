#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "heatineq/function.hpp"
#include "heatineq/graph.hpp"

namespace heatineq {

// Gradient form: Gamma(f,h)(x) = (1/2m(x)) sum_y w_xy (f(y)-f(x))(h(y)-h(x)).
std::vector<double> gamma(const WeightedGraph& g, std::span<const double> f);
std::vector<double> gamma(const WeightedGraph& g, std::span<const double> f,
                          std::span<const double> h);

double gamma_at(const WeightedGraph& g, std::span<const double> f, int x);
double gamma_at(const WeightedGraph& g, std::span<const double> f,
                std::span<const double> h, int x);

// Iterated form Gamma2 = (1/2) L Gamma(f) - Gamma(f, Lf) and its modified
// variant Gamma2~ = Gamma2 - Gamma(f, Gamma(f)/f).  The modified form needs
// f > 0 on B(x,2) of every requested vertex.
struct Gamma2Pair {
  std::vector<double> gamma2;
  std::vector<double> gamma2_tilde;
};
Gamma2Pair gamma2_pair(const WeightedGraph& g, std::span<const double> f);

// Local evaluations reading f only on B(x,2).
double gamma2_at(const WeightedGraph& g, std::span<const double> f, int x);
double gamma2_tilde_at(const WeightedGraph& g, std::span<const double> f, int x);

// Curvature residual at x:
//   Gamma2~(f)(x) - (1/n) f(x)^2 (L log f)(x)^2 - K Gamma(f)(x).
// Requires f > 0 on B(x,2); 2-homogeneous in f.
double cde_residual(const WeightedGraph& g, std::span<const double> f, int x,
                    double n, double K);

struct CurvatureBudget {
  int restarts = 50;
  int max_iterations = 4000;  // objective evaluations per restart
};

struct CurvatureReport {
  int vertex = 0;
  double n = 0.0;
  double K = 0.0;
  double min_residual = 0.0;
  std::vector<int> stencil;          // B(x,2), sorted
  std::vector<double> witness;       // f on the stencil, f(x) = 1
  bool violated = false;             // min_residual < -tolerance
  double tolerance = 1e-8;
  int restarts = 0;
  std::uint64_t seed = 0;
  long long evaluations = 0;
};

// Searches for a violation of the curvature inequality at x by multistart
// simplex minimization of the residual over positive f on B(x,2), with
// f = exp(u) and the gauge u(x) = 0.  Verdict "violated" means a concrete
// witness with residual < -tolerance was found; otherwise the verdict is
// "no violation found" (never "holds").
CurvatureReport cde_verify(const WeightedGraph& g, int x, double n, double K,
                           const CurvatureBudget& budget, std::uint64_t seed,
                           bool parallel = true);

// Evaluates the report's witness through cde_residual (round-trip check).
double recompute_witness_residual(const WeightedGraph& g, const CurvatureReport& r);

struct DimensionScan {
  double n_lo = 0.0;          // violated here
  double n_hi = 0.0;          // clean here
  std::vector<double> probed;  // midpoints in order
  int verify_calls = 0;
  bool collapsed = false;  // no violation even at n_lo; interval is [n_lo, n_lo]
};

// Bisection for the smallest dimension parameter with no violation found,
// given a bracket: violated at n_lo, clean at n_hi.  If nothing is violated
// at n_lo the estimate collapses to n_lo; a violation persisting at n_hi is
// an error.  The best violation witness is reused as a warm start at each
// midpoint, which keeps verdicts monotone in n.
DimensionScan dimension_scan(const WeightedGraph& g, int x, double K,
                             double n_lo, double n_hi, double resolution,
                             const CurvatureBudget& budget, std::uint64_t seed);

}  // namespace heatineq
