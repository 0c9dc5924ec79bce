// Acceptance suite: end-to-end checks with pinned tolerances.  Prints one
// PASS/FAIL line per criterion and exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "heatineq/family.hpp"
#include "heatineq/function.hpp"
#include "heatineq/gradient.hpp"
#include "heatineq/graph.hpp"
#include "heatineq/inequality.hpp"
#include "heatineq/rng.hpp"
#include "heatineq/semigroup.hpp"
#include "oracles.hpp"

using namespace heatineq;

namespace {

int g_failures = 0;
std::vector<std::string> g_notes;

void criterion(int id, const std::string& name, const std::function<bool()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  std::string error;
  try {
    ok = body();
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!ok) ++g_failures;
  std::printf("criterion %d (%s): %s (%.1fs)%s%s\n", id, name.c_str(),
              ok ? "PASS" : "FAIL", secs, error.empty() ? "" : " error: ",
              error.c_str());
  for (const auto& n : g_notes) std::printf("    %s\n", n.c_str());
  g_notes.clear();
  std::fflush(stdout);
}

void note(std::string s) { g_notes.push_back(std::move(s)); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int window_center(const WeightedGraph& g) {
  int best = 0;
  for (int x = 1; x < g.size(); ++x)
    if (g.dist_to_boundary(x) > g.dist_to_boundary(best)) best = x;
  return best;
}

bool closed_form_kernel() {
  auto g = two_point();
  double times[3] = {0.1, 1.0, 5.0};
  auto table = continuous_kernel(g, 0, times, 1e-12);
  bool ok = true;
  for (const auto& row : table.continuous) {
    double expect = (1.0 + std::exp(-2.0 * row.t)) / 2.0;
    ok &= std::abs(row.density[0] - expect) < 1e-10;
    ok &= std::abs(row.density[1] - (1.0 - expect)) < 1e-10;
  }
  auto disc = discrete_kernel(g, 0, 11);
  for (int k = 0; k <= 11; ++k) {
    ok &= disc.discrete[k][0] == (k % 2 == 0 ? 1.0 : 0.0);
    ok &= disc.discrete[k][1] == (k % 2 == 0 ? 0.0 : 1.0);
  }
  return ok;
}

bool oracle_equivalence() {
  bool ok = true;
  // uniformization vs dense matrix exponential on 20 random graphs
  for (int s = 0; s < 20; ++s) {
    auto g = oracle::random_graph(42000 + 17 * s, 64);
    double times[2] = {0.5, 2.0};
    auto table = continuous_kernel(g, 0, times, 1e-12);
    auto d1 = oracle::heat_kernel_dense(g, 0.5);
    auto d2 = oracle::heat_kernel_dense(g, 2.0);
    double worst = 0.0;
    for (int y = 0; y < g.size(); ++y) {
      worst = std::max(worst, std::abs(table.continuous[0].density[y] - d1[0][y]));
      worst = std::max(worst, std::abs(table.continuous[1].density[y] - d2[0][y]));
    }
    ok &= worst < 1e-8;
  }
  // gradient-form stencils vs the direct-definition oracle on small graphs
  std::vector<WeightedGraph> graphs;
  graphs.push_back(two_point());
  for (int n = 3; n <= 8; ++n) graphs.push_back(cycle(n));
  for (int n = 3; n <= 8; ++n) graphs.push_back(complete(n));
  graphs.push_back(lattice_window(3, 1));
  graphs.push_back(from_edges(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}));
  graphs.push_back(alpha_loop_transform(cycle(6), 0.25));
  for (int s = 0; s < 24; ++s) graphs.push_back(oracle::random_graph(52000 + s, 8));
  double worst = 0.0;
  for (const auto& g : graphs) {
    for (int trial = 0; trial < 4; ++trial) {
      auto f = oracle::random_positive_function(g, 100 * trial + 3, 0.8);
      auto pair = gamma2_pair(g, f);
      for (int x = 0; x < g.size(); ++x) {
        worst = std::max(worst, std::abs(pair.gamma2[x] - oracle::gamma2_bf(g, f, x)));
        worst = std::max(worst,
                         std::abs(pair.gamma2_tilde[x] - oracle::gamma2_tilde_bf(g, f, x)));
      }
    }
  }
  note("stencil worst deviation " + fmt(worst));
  ok &= worst < 1e-12;
  return ok;
}

bool semigroup_invariants() {
  bool ok = true;
  for (int d : {1, 2}) {
    auto g = alpha_loop_transform(torus(32, d), 0.25);
    // reversibility of discrete and continuous rows from a few base vertices
    {
      std::vector<int> bases{0, g.size() / 3, g.size() / 2};
      double times[1] = {2.0};
      std::vector<HeatKernelTable> tables;
      for (int x : bases) {
        auto t = discrete_kernel(g, x, 8);
        add_continuous_rows(t, times, 1e-12);
        tables.push_back(std::move(t));
      }
      for (size_t a = 0; a < bases.size(); ++a)
        for (size_t b = 0; b < bases.size(); ++b) {
          int x = bases[a], y = bases[b];
          for (int k = 0; k <= 8; ++k)
            ok &= std::abs(g.measure[x] * tables[a].discrete[k][y] -
                           g.measure[y] * tables[b].discrete[k][x]) < 1e-12;
          ok &= std::abs(tables[a].continuous[0].density[y] -
                         tables[b].continuous[0].density[x]) < 1e-10;
        }
    }
    Rng rng(500 + d);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> f(g.size());
      for (auto& v : f) v = rng.normal();
      // mass conservation for nonnegative data
      std::vector<double> fpos(f);
      for (auto& v : fpos) v = std::abs(v);
      auto moved = heat_apply(g, fpos, 1.7, 1e-13);
      ok &= std::abs(norm1(g, moved) - norm1(g, fpos)) < 1e-10 * norm1(g, fpos);

      // energy identity by adaptive Simpson to 1e-6
      const double s = 1.2;
      auto integrand = [&](double t) {
        auto ptf = heat_apply(g, f, t / 2.0, 1e-13);
        return bracket(g, gamma(g, ptf));
      };
      std::function<double(double, double, double, double, double, double)> simpson =
          [&](double a, double b, double fa, double fb, double fm, double tol) {
            double m = 0.5 * (a + b);
            double flm = integrand(0.5 * (a + m)), frm = integrand(0.5 * (m + b));
            double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            if (std::abs(left + right - whole) < 15.0 * tol)
              return left + right + (left + right - whole) / 15.0;
            return simpson(a, m, fa, fm, flm, tol / 2.0) +
                   simpson(m, b, fm, fb, frm, tol / 2.0);
          };
      double integral = simpson(0.0, s, integrand(0.0), integrand(s), integrand(s / 2.0),
                                1e-8);
      auto psf = heat_apply(g, f, s, 1e-13);
      double lhs = inner(g, f, f) - inner(g, psf, f);
      ok &= std::abs(lhs - integral) <= 1e-6 * std::max(1.0, std::abs(lhs));

      // gradient decay and p-norm monotonicity
      double prev_e = std::numeric_limits<double>::infinity();
      double prev_2 = prev_e, prev_4 = prev_e;
      for (double t : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        auto ptf = heat_apply(g, f, t, 1e-13);
        double e = bracket(g, gamma(g, ptf));
        double n2 = norm2(g, ptf), n4 = norm_p(g, ptf, 4.0);
        ok &= e <= prev_e + 1e-10;
        ok &= n2 <= prev_2 + 1e-10;
        ok &= n4 <= prev_4 + 1e-10;
        prev_e = e;
        prev_2 = n2;
        prev_4 = n4;
      }
    }
  }
  return ok;
}

bool decay_exponents() {
  bool ok = true;
  {
    auto g = alpha_loop_transform(torus(64, 2), 0.25);
    std::vector<double> ks;
    for (int k = 16; k <= 128; ++k) ks.push_back(k);
    auto due = exponent_fit(g, KernelMode::discrete, ks);
    note("torus(64,2) discrete exponent " + std::to_string(due.exponent));
    ok &= !due.any_saturated;
    ok &= std::abs(due.exponent - 1.0) <= 0.1;
    std::vector<double> ts;
    for (int i = 0; i < 12; ++i) ts.push_back(8.0 * std::pow(8.0, i / 11.0));
    auto cue = exponent_fit(g, KernelMode::continuous, ts, 1e-10);
    note("torus(64,2) continuous exponent " + std::to_string(cue.exponent));
    ok &= !cue.any_saturated;
    ok &= std::abs(cue.exponent - 1.0) <= 0.1;
  }
  {
    auto g = alpha_loop_transform(torus(64, 1), 0.25);
    std::vector<double> ks;
    for (int k = 16; k <= 256; ++k) ks.push_back(k);
    auto due = exponent_fit(g, KernelMode::discrete, ks);
    note("torus(64,1) discrete exponent " + std::to_string(due.exponent));
    ok &= !due.any_saturated;
    ok &= std::abs(due.exponent - 0.5) <= 0.05;
    std::vector<double> ts;
    for (int i = 0; i < 12; ++i) ts.push_back(8.0 * std::pow(8.0, i / 11.0));
    auto cue = exponent_fit(g, KernelMode::continuous, ts, 1e-10);
    note("torus(64,1) continuous exponent " + std::to_string(cue.exponent));
    ok &= !cue.any_saturated;
    ok &= std::abs(cue.exponent - 0.5) <= 0.05;
  }
  return ok;
}

bool curvature_claim() {
  bool ok = true;
  CurvatureBudget budget{200, 5000};
  for (int d : {1, 2}) {
    auto w = lattice_window(4, d);
    int c = window_center(w);
    auto rep = cde_verify(w, c, 4.53 * d, 0.0, budget, 2026);
    note("window(4," + std::to_string(d) + ") min residual " + fmt(rep.min_residual));
    ok &= !rep.violated;
    ok &= rep.min_residual >= -1e-8;
  }
  auto w1 = lattice_window(4, 1);
  auto scan = dimension_scan(w1, window_center(w1), 0.0, 0.5, 4.53, 0.05,
                             CurvatureBudget{60, 4000}, 7);
  note("dimension bracket [" + std::to_string(scan.n_lo) + ", " +
       std::to_string(scan.n_hi) + "]");
  ok &= !scan.collapsed;
  ok &= scan.n_hi <= 4.53 + 1e-12;
  return ok;
}

bool beta_slope() {
  auto g = alpha_loop_transform(torus(64, 2), 0.25);
  FamilySpec spec;
  spec.seed = 11;
  auto fam = make_family(g, spec);
  std::vector<double> eps;
  for (int i = 0; i < 13; ++i) eps.push_back(0.25 * std::pow(64.0, i / 12.0));
  auto curve = beta_empirical(g, fam, eps);
  beta_logfit(curve);
  note("slope " + std::to_string(curve.fit_slope) + " (target 0.5 +- 0.1), c " +
       std::to_string(curve.fit_c));
  return !curve.degenerate && std::abs(curve.fit_slope - 0.5) <= 0.1;
}

bool theorem_chains() {
  bool ok = true;
  for (int which : {0, 1}) {
    WeightedGraph g =
        which == 0 ? two_point() : alpha_loop_transform(torus(32, 2), 0.25);
    FamilySpec spec;
    spec.seed = 5;
    spec.t_max = which == 0 ? 4.0 : 16.0;
    spec.heat_times = 6;
    spec.randoms = 6;
    spec.perturbed = 4;
    auto fam = make_family(g, spec);
    extend_with_trajectories(fam, std::vector<double>{0.5, 2.0});
    ChainParams params;
    params.mu = 2.0;
    params.grid = {0.5, 1.0, 2.0, 4.0, 8.0};
    const char* names[4] = {"a", "b", "c", "d"};
    ChainTag tags[4] = {ChainTag::uc_to_ls, ChainTag::ls_to_uc, ChainTag::uc_to_nash,
                        ChainTag::nash_to_uc};
    for (int i = 0; i < 4; ++i) {
      auto rec = chain_check(g, tags[i], fam, nullptr, params);
      note(std::string(which == 0 ? "K2" : "torus(32,2)") + " chain " + names[i] +
           " worst margin " + fmt(rec.worst_margin));
      ok &= rec.pass;
      ok &= !rec.degenerate;
    }
  }
  return ok;
}

bool faber_krahn_floor() {
  auto g = alpha_loop_transform(lattice_window(16, 2), 0.25);
  OmegaSampler s;
  s.seed = 3;
  s.budget = 500;
  auto scan1 = faber_krahn_scan(g, 2.0, s);
  s.budget = 1000;
  auto scan2 = faber_krahn_scan(g, 2.0, s);
  double change = std::abs(scan1.absolute.value - scan2.absolute.value) /
                  scan1.absolute.value;
  note("c-hat(500) = " + std::to_string(scan1.absolute.value) + ", c-hat(1000) = " +
       std::to_string(scan2.absolute.value) + ", change " +
       std::to_string(100.0 * change) + "%");
  return scan1.absolute.value > 0.0 && change < 0.10;
}

bool scalar_inequalities() {
  Rng rng(90210);
  long violations = 0;
  for (int i = 0; i < 10000; ++i) {
    double a = std::exp(rng.uniform(-3.0, 3.0));
    double b = std::exp(rng.uniform(-3.0, 3.0));
    double p = 2.0 + rng.uniform(1e-6, 8.0);
    double lhs = std::pow(a, p / 2.0) - std::pow(b, p / 2.0);
    lhs *= lhs;
    double rhs = p * p / (4.0 * (p - 1.0)) * (a - b) *
                 (std::pow(a, p - 1.0) - std::pow(b, p - 1.0));
    if (lhs > rhs + 1e-12 * std::max(1.0, std::abs(rhs))) ++violations;
  }
  for (int s = 0; s < 100; ++s) {
    auto g = oracle::random_graph(77000 + s, 16);
    auto f = oracle::random_positive_function(g, s, 0.9);
    double p = 2.0 + (s % 7) + 0.5;
    std::vector<double> fp2(f), fpm1(f);
    for (auto& v : fp2) v = std::pow(v, p / 2.0);
    for (auto& v : fpm1) v = std::pow(v, p - 1.0);
    auto lhs = gamma(g, fp2);
    auto rhs = gamma(g, fpm1, f);
    for (int x = 0; x < g.size(); ++x)
      if (lhs[x] > p * p / (4.0 * (p - 1.0)) * rhs[x] +
                       1e-12 * std::max(1.0, std::abs(rhs[x])))
        ++violations;
  }
  note("violations: " + std::to_string(violations));
  return violations == 0;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  criterion(1, "closed-form kernel on K2", closed_form_kernel);
  criterion(2, "oracle equivalence (matrix exponential, stencils)", oracle_equivalence);
  criterion(3, "semigroup invariant suite on torus(32,d)", semigroup_invariants);
  criterion(4, "discrete/continuous decay exponents on lazy tori", decay_exponents);
  criterion(5, "curvature condition on lattice windows", curvature_claim);
  criterion(6, "log-Sobolev beta slope on lazy torus(64,2)", beta_slope);
  criterion(7, "theorem chains on K2 and lazy torus(32,2)", theorem_chains);
  criterion(8, "Faber-Krahn floor on lazy window(16,2)", faber_krahn_floor);
  criterion(9, "scalar p-power inequality suite", scalar_inequalities);
  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
