#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "heatineq/family.hpp"
#include "heatineq/function.hpp"
#include "heatineq/graph.hpp"

namespace heatineq {

// Dirichlet bottom eigenvalue ------------------------------------------------

struct DirichletResult {
  double lambda1 = 0.0;
  std::vector<double> eigenfunction;  // supported on Omega, unit m-norm, >= 0
};

// Smallest eigenvalue of the Dirichlet restriction of -L to Omega, i.e. the
// minimum of <Gamma(f)> / ||f||_2^2 over functions vanishing off Omega.
DirichletResult dirichlet_lambda1(const WeightedGraph& g, const VertexSet& omega);

// Constant estimates -----------------------------------------------------------

// Direction of a search-based estimate: sup over witnesses bounds the optimal
// constant from below, min over sampled domains bounds it from above.
enum class BoundDirection { lower_bound, upper_bound };

struct ConstantEstimate {
  std::string tag;  // "S", "N", "FK", "FK*", "LS-beta"
  double dimension = 0.0;
  double epsilon = 0.0;  // LS only
  double nu = 0.0;       // relative Faber-Krahn only
  double value = 0.0;
  BoundDirection direction = BoundDirection::lower_bound;
  std::string method;
  std::uint64_t seed = 0;
  // witness: either a function or a vertex set
  std::vector<double> witness_function;
  std::vector<int> witness_set;
};

// Faber-Krahn scans ------------------------------------------------------------

struct OmegaSampler {
  // All sampled sets avoid boundary-marked vertices.
  enum class Kind { balls, boxes, connected, subsets, mixed };
  Kind kind = Kind::mixed;
  int budget = 200;
  int max_radius = 6;
  int max_box_side = 9;
  int max_set_size = 80;
  std::uint64_t seed = 1;
};

std::vector<VertexSet> sample_domains(const WeightedGraph& g, const OmegaSampler& s);

struct FaberKrahnScan {
  ConstantEstimate absolute;               // min lambda1 * V(Omega)^(2/D)
  std::optional<ConstantEstimate> relative;  // min lambda1 * r^2 * (V(Omega)/V(x,r))^nu
  int domains_evaluated = 0;
};

// Scans sampled domains; `nu` enables the relative variant (domains are paired
// with enclosing balls B(x, r)).
FaberKrahnScan faber_krahn_scan(const WeightedGraph& g, double D,
                                const OmegaSampler& sampler,
                                std::optional<double> nu = std::nullopt,
                                bool parallel = true);

// Functional quotients ----------------------------------------------------------

struct Quotients {
  double nash = 0.0;
  double sobolev = 0.0;  // squared-norm reading; valid for D > 2 only
  bool sobolev_valid = false;
};

// nash = ||f||_2^(2+4/D) / (<Gamma f> ||f||_1^(4/D));
// sobolev = ||f||_{2D/(D-2)}^2 / <Gamma f>.  Scale-invariant in f.
Quotients functional_quotients(const WeightedGraph& g, std::span<const double> f,
                               double D);

// Log-Sobolev functionals ---------------------------------------------------------

// Entropy against the stationary probability measure m/V(G):
//   entropy(f) = <f^2 log f> - ||f||_2^2 log(||f||_2 / sqrt(V(G))).
// Nonnegative, zero exactly for constants, 2-homogeneous in f.
double entropy(const WeightedGraph& g, std::span<const double> f);

struct LsiGap {
  double entropy = 0.0;
  double gap = 0.0;  // entropy - eps <Gamma f>
};
LsiGap entropy_and_gap(const WeightedGraph& g, std::span<const double> f, double eps);

// beta_empirical(eps) = sup over the family of gap / ||f||_2^2.
struct BetaCurve {
  std::vector<double> eps_grid;
  std::vector<double> beta;
  std::vector<int> witness_index;  // family member realizing the sup
  // fitted form beta ~ c - slope * log eps
  double fit_c = 0.0;
  double fit_slope = 0.0;
  bool degenerate = false;  // all members constant / zero energy
};

BetaCurve beta_empirical(const WeightedGraph& g, const FunctionFamily& family,
                         std::span<const double> eps_grid, bool parallel = true);

// Least-squares fit of beta against a + b log(eps); returns (c, slope) with
// beta ~ c - slope*log(eps).  Errors on degenerate data or < 4 points.
void beta_logfit(BetaCurve& curve);

// M(t) = (1/t) * integral_0^t beta(eps) d eps.  Near zero the fitted form is
// integrated in closed form; on the grid the piecewise-linear interpolant is
// integrated exactly.  Beyond the grid the fitted line is used, clamped to
// [0, beta(last)].
double davies_simon_M(const BetaCurve& beta, double t);

// Theorem chains -------------------------------------------------------------------

enum class ChainTag { uc_to_ls, ls_to_uc, uc_to_nash, nash_to_uc };

struct ChainPoint {
  double where = 0.0;       // eps or t, with member index when applicable
  int member = -1;
  double measured = 0.0;
  double predicted = 0.0;
  double margin = 0.0;  // predicted - measured
};

struct ChainCheckRecord {
  ChainTag tag = ChainTag::uc_to_ls;
  bool pass = false;
  bool degenerate = false;  // vacuous pass (e.g. constants-only family)
  double worst_margin = 0.0;
  int skipped_members = 0;  // zero-energy, or optimal time beyond the horizon
  std::vector<ChainPoint> points;
  // measured inputs recorded for provenance
  double c1_squared = 0.0;  // UC -> Nash
  double c2 = 0.0;          // Nash -> UC
  double mu = 0.0;
};

struct ChainParams {
  std::vector<double> grid;  // eps grid for (a), t grid for (b)-(d)
  double mu = 2.0;
  double kernel_tol = 1e-12;
  double slack = 1e-9;  // pass iff measured <= predicted + slack
};

ChainCheckRecord chain_check(const WeightedGraph& g, ChainTag tag,
                             const FunctionFamily& family, const BetaCurve* beta,
                             const ChainParams& params);

// p-version of the log-Sobolev inequality -------------------------------------------

// margin of  <f^p log f> <= eps <Gamma(f^{p-1}, f)> + (2 beta/p) ||f||_p^p
//                           + ||f||_p^p log(||f||_p / V(G)^{1/p})
// where beta is measured over the supplied family extended by f^{p/2}.
double lsi_p_version_margin(const WeightedGraph& g, std::span<const double> f,
                            double p, double eps, const FunctionFamily& family);

}  // namespace heatineq
