#include "heatineq/inequality.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "heatineq/gradient.hpp"
#include "heatineq/rng.hpp"
#include "heatineq/semigroup.hpp"

namespace heatineq {

DirichletResult dirichlet_lambda1(const WeightedGraph& g, const VertexSet& omega) {
  if (omega.members.empty()) throw std::invalid_argument("empty domain");
  const int k = static_cast<int>(omega.members.size());
  std::vector<int> pos(static_cast<size_t>(g.size()), -1);
  for (int i = 0; i < k; ++i) pos[static_cast<size_t>(omega.members[i])] = i;
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    int x = omega.members[static_cast<size_t>(i)];
    S(i, i) = 1.0;
    for (int e = g.offsets[x]; e < g.offsets[x + 1]; ++e) {
      int y = g.nbr[e];
      int j = pos[static_cast<size_t>(y)];
      if (j < 0) continue;
      S(i, j) -= g.weight[e] / std::sqrt(g.measure[x] * g.measure[y]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(S);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigensolver failed on Dirichlet matrix");
  DirichletResult res;
  res.lambda1 = solver.eigenvalues()(0);
  // the spectrum lives in [0,2]; shave off eigensolver noise
  if (res.lambda1 < 0.0 && res.lambda1 > -1e-12) res.lambda1 = 0.0;
  Eigen::VectorXd v = solver.eigenvectors().col(0);
  res.eigenfunction.assign(static_cast<size_t>(g.size()), 0.0);
  for (int i = 0; i < k; ++i) {
    int x = omega.members[static_cast<size_t>(i)];
    // minimizers are signless; |f| has no larger Rayleigh quotient
    res.eigenfunction[static_cast<size_t>(x)] = std::abs(v(i)) / std::sqrt(g.measure[x]);
  }
  double nrm = norm2(g, res.eigenfunction);
  for (auto& val : res.eigenfunction) val /= nrm;
  return res;
}

std::vector<VertexSet> sample_domains(const WeightedGraph& g, const OmegaSampler& s) {
  Rng rng(s.seed);
  std::vector<int> interior;
  for (int x = 0; x < g.size(); ++x)
    if (!g.has_boundary() || !g.boundary[x]) interior.push_back(x);
  if (interior.empty()) throw std::invalid_argument("no interior vertices to sample");
  auto pick_interior = [&] {
    return interior[rng.below(interior.size())];
  };
  std::vector<VertexSet> domains;
  auto add = [&](std::vector<int> members) {
    std::vector<int> clean;
    for (int x : members)
      if (!g.has_boundary() || !g.boundary[x]) clean.push_back(x);
    if (clean.empty()) return;
    auto set = make_vertex_set(g, std::move(clean));
    // domains must be strict subsets: the whole graph has lambda1 = 0 and
    // carries no Dirichlet content
    if (static_cast<int>(set.members.size()) == g.size()) {
      set.volume -= g.measure[set.members.back()];
      set.members.pop_back();
    }
    domains.push_back(std::move(set));
  };
  int kind_cycle = 0;
  while (static_cast<int>(domains.size()) < s.budget) {
    OmegaSampler::Kind kind = s.kind;
    if (kind == OmegaSampler::Kind::mixed) {
      constexpr OmegaSampler::Kind kinds[4] = {
          OmegaSampler::Kind::balls, OmegaSampler::Kind::boxes,
          OmegaSampler::Kind::connected, OmegaSampler::Kind::subsets};
      kind = kinds[kind_cycle++ % 4];
      if (kind == OmegaSampler::Kind::boxes && g.coords.empty())
        kind = OmegaSampler::Kind::connected;
    }
    switch (kind) {
      case OmegaSampler::Kind::balls: {
        int c = pick_interior();
        int r_hi = std::min(s.max_radius, g.dist_to_boundary(c) - 1);
        int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(std::max(1, r_hi + 1))));
        add(ball(g, c, std::max(0, r)).members);
        break;
      }
      case OmegaSampler::Kind::boxes: {
        if (g.coords.empty()) {
          add({pick_interior()});
          break;
        }
        int c = pick_interior();
        const auto& cc = g.coords[static_cast<size_t>(c)];
        int d = static_cast<int>(cc.size());
        std::vector<int> half(static_cast<size_t>(d));
        for (int k2 = 0; k2 < d; ++k2)
          half[static_cast<size_t>(k2)] =
              static_cast<int>(rng.below(static_cast<std::uint64_t>(s.max_box_side / 2 + 1)));
        std::vector<int> members;
        for (int y = 0; y < g.size(); ++y) {
          bool in = true;
          for (int k2 = 0; k2 < d && in; ++k2)
            if (std::abs(g.coords[static_cast<size_t>(y)][static_cast<size_t>(k2)] -
                         cc[static_cast<size_t>(k2)]) > half[static_cast<size_t>(k2)])
              in = false;
          if (in) members.push_back(y);
        }
        add(std::move(members));
        break;
      }
      case OmegaSampler::Kind::connected: {
        int target = 2 + static_cast<int>(rng.below(
                             static_cast<std::uint64_t>(std::max(2, s.max_set_size - 1))));
        std::vector<int> members{pick_interior()};
        std::vector<std::uint8_t> in(static_cast<size_t>(g.size()), 0);
        in[static_cast<size_t>(members[0])] = 1;
        std::vector<int> frontier{members[0]};
        while (static_cast<int>(members.size()) < target && !frontier.empty()) {
          size_t fi = rng.below(frontier.size());
          int x = frontier[fi];
          std::vector<int> cand;
          for (int y : g.neighbors(x))
            if (y != x && !in[static_cast<size_t>(y)] &&
                (!g.has_boundary() || !g.boundary[y]))
              cand.push_back(y);
          if (cand.empty()) {
            frontier[fi] = frontier.back();
            frontier.pop_back();
            continue;
          }
          int y = cand[rng.below(cand.size())];
          in[static_cast<size_t>(y)] = 1;
          members.push_back(y);
          frontier.push_back(y);
        }
        add(std::move(members));
        break;
      }
      case OmegaSampler::Kind::subsets: {
        int target =
            1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s.max_set_size)));
        std::vector<int> members;
        for (int i = 0; i < target; ++i) members.push_back(pick_interior());
        add(std::move(members));
        break;
      }
      case OmegaSampler::Kind::mixed:
        break;  // unreachable
    }
  }
  return domains;
}

FaberKrahnScan faber_krahn_scan(const WeightedGraph& g, double D,
                                const OmegaSampler& sampler, std::optional<double> nu,
                                bool parallel) {
  if (!(D > 0.0)) throw std::invalid_argument("D must be positive");
  auto domains = sample_domains(g, sampler);
  const int count = static_cast<int>(domains.size());
  std::vector<double> lambdas(static_cast<size_t>(count));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < count; ++i)
    lambdas[static_cast<size_t>(i)] =
        dirichlet_lambda1(g, domains[static_cast<size_t>(i)]).lambda1;
  FaberKrahnScan scan;
  scan.domains_evaluated = count;
  int best = -1;
  double best_val = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    double v = lambdas[static_cast<size_t>(i)] *
               std::pow(domains[static_cast<size_t>(i)].volume, 2.0 / D);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  scan.absolute.tag = "FK";
  scan.absolute.dimension = D;
  scan.absolute.value = best_val;
  scan.absolute.direction = BoundDirection::upper_bound;
  scan.absolute.method = "min over sampled domains of lambda1 * V(Omega)^(2/D)";
  scan.absolute.seed = sampler.seed;
  scan.absolute.witness_set = domains[static_cast<size_t>(best)].members;

  if (nu) {
    // pair every domain with an enclosing ball around its first member
    ConstantEstimate rel;
    rel.tag = "FK*";
    rel.dimension = D;
    rel.direction = BoundDirection::upper_bound;
    rel.method = "min over sampled (x, r, Omega) of lambda1 * r^2 * (V(Omega)/V(x,r))^nu";
    rel.seed = sampler.seed;
    double rel_best = std::numeric_limits<double>::infinity();
    int rel_idx = -1;
    std::vector<double> rel_vals(static_cast<size_t>(count));
    std::vector<double> radii(static_cast<size_t>(count));
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < count; ++i) {
      const auto& om = domains[static_cast<size_t>(i)];
      int x0 = om.members.front();
      auto dist = bfs_distances(g, x0);
      int r = 1;
      for (int y : om.members) r = std::max(r, dist[static_cast<size_t>(y)]);
      auto b = ball(g, x0, r);
      rel_vals[static_cast<size_t>(i)] =
          lambdas[static_cast<size_t>(i)] * static_cast<double>(r) * r *
          std::pow(om.volume / b.volume, *nu);
      radii[static_cast<size_t>(i)] = r;
    }
    for (int i = 0; i < count; ++i)
      if (rel_vals[static_cast<size_t>(i)] < rel_best) {
        rel_best = rel_vals[static_cast<size_t>(i)];
        rel_idx = i;
      }
    rel.value = rel_best;
    rel.nu = *nu;
    rel.witness_set = domains[static_cast<size_t>(rel_idx)].members;
    scan.relative = std::move(rel);
  }
  return scan;
}

Quotients functional_quotients(const WeightedGraph& g, std::span<const double> f,
                               double D) {
  if (!(D > 0.0)) throw std::invalid_argument("D must be positive");
  double energy = bracket(g, gamma(g, f));
  if (energy <= 0.0)
    throw std::invalid_argument("functional quotient undefined: <Gamma(f)> = 0");
  double n2sq = norm2_sq(g, f);
  double n1 = norm1(g, f);
  Quotients q;
  q.nash = std::pow(n2sq, 1.0 + 2.0 / D) / (energy * std::pow(n1, 4.0 / D));
  if (D > 2.0) {
    double p = 2.0 * D / (D - 2.0);
    double np = norm_p(g, f, p);
    q.sobolev = np * np / energy;
    q.sobolev_valid = true;
  }
  return q;
}

double entropy(const WeightedGraph& g, std::span<const double> f) {
  double sum = 0.0, n2sq = 0.0;
  for (int x = 0; x < g.size(); ++x) {
    double v = f[static_cast<size_t>(x)];
    if (v < 0.0) throw std::invalid_argument("entropy requires f >= 0");
    if (v > 0.0) sum += g.measure[x] * v * v * std::log(v);
    n2sq += g.measure[x] * v * v;
  }
  if (n2sq == 0.0) throw std::invalid_argument("entropy of the zero function");
  return sum - n2sq * std::log(std::sqrt(n2sq / g.total_volume));
}

LsiGap entropy_and_gap(const WeightedGraph& g, std::span<const double> f, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  LsiGap out;
  out.entropy = entropy(g, f);
  out.gap = out.entropy - eps * bracket(g, gamma(g, f));
  return out;
}

BetaCurve beta_empirical(const WeightedGraph& g, const FunctionFamily& family,
                         std::span<const double> eps_grid, bool parallel) {
  if (family.members.empty()) throw std::invalid_argument("empty family");
  const int count = static_cast<int>(family.members.size());
  std::vector<double> ent(static_cast<size_t>(count)), energy(static_cast<size_t>(count)),
      n2sq(static_cast<size_t>(count));
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < count; ++i) {
    const auto& f = family.members[static_cast<size_t>(i)].values;
    ent[static_cast<size_t>(i)] = entropy(g, f);
    energy[static_cast<size_t>(i)] = bracket(g, gamma(g, f));
    n2sq[static_cast<size_t>(i)] = norm2_sq(g, f);
  }
  BetaCurve curve;
  curve.eps_grid.assign(eps_grid.begin(), eps_grid.end());
  curve.degenerate = true;
  for (int i = 0; i < count; ++i)
    if (energy[static_cast<size_t>(i)] > 0.0) curve.degenerate = false;
  for (double eps : curve.eps_grid) {
    double best = -std::numeric_limits<double>::infinity();
    int best_i = -1;
    for (int i = 0; i < count; ++i) {
      double val = (ent[static_cast<size_t>(i)] - eps * energy[static_cast<size_t>(i)]) /
                   n2sq[static_cast<size_t>(i)];
      if (val > best) {
        best = val;
        best_i = i;
      }
    }
    curve.beta.push_back(best);
    curve.witness_index.push_back(best_i);
  }
  return curve;
}

void beta_logfit(BetaCurve& curve) {
  if (curve.eps_grid.size() < 4)
    throw std::invalid_argument("beta_logfit needs at least 4 grid points");
  if (curve.degenerate) {
    curve.fit_c = 0.0;
    curve.fit_slope = 0.0;
    return;  // fit rejected; degenerate flag already set
  }
  double span = curve.eps_grid.back() / curve.eps_grid.front();
  if (span < 31.62)  // 1.5 decades
    throw std::invalid_argument("beta_logfit grid must span at least 1.5 decades");
  std::vector<double> lx;
  lx.reserve(curve.eps_grid.size());
  for (double e : curve.eps_grid) lx.push_back(std::log(e));
  auto [a, b] = linear_fit(lx, curve.beta);
  curve.fit_c = a;
  curve.fit_slope = -b;
}

namespace {

// beta interpolated linearly in log(eps); exact integral of each cell.
double integrate_cell(double e1, double b1, double e2, double b2) {
  if (!(e2 > e1)) return 0.0;  // zero-width or duplicate grid points
  // beta(e) = a + s*log e on [e1, e2]
  double s = (b2 - b1) / (std::log(e2) - std::log(e1));
  double a = b1 - s * std::log(e1);
  auto anti = [&](double e) { return a * e + s * (e * std::log(e) - e); };
  return anti(e2) - anti(e1);
}

}  // namespace

double davies_simon_M(const BetaCurve& beta, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (beta.eps_grid.empty()) throw std::invalid_argument("empty beta curve");
  const double e0 = beta.eps_grid.front();
  const bool have_fit = !beta.degenerate && (beta.fit_c != 0.0 || beta.fit_slope != 0.0);
  double total = 0.0;
  double upto = std::min(t, e0);
  // [0, min(t, e0)]: closed form of the fitted line (integrable at 0)
  if (have_fit) {
    double c = beta.fit_c, s = beta.fit_slope;
    total += c * upto - s * (upto * std::log(upto) - upto);
  } else {
    total += beta.beta.front() * upto;
  }
  if (t <= e0) return total / t;
  // grid part
  size_t i = 0;
  while (i + 1 < beta.eps_grid.size() && beta.eps_grid[i + 1] <= t) {
    total += integrate_cell(beta.eps_grid[i], beta.beta[i], beta.eps_grid[i + 1],
                            beta.beta[i + 1]);
    ++i;
  }
  double covered = beta.eps_grid[i];
  if (t > covered) {
    if (i + 1 < beta.eps_grid.size()) {
      // partial cell
      double e2 = beta.eps_grid[i + 1];
      double b_at_t = beta.beta[i] + (beta.beta[i + 1] - beta.beta[i]) *
                                         (std::log(t) - std::log(covered)) /
                                         (std::log(e2) - std::log(covered));
      total += integrate_cell(covered, beta.beta[i], t, b_at_t);
    } else {
      if (!have_fit)
        throw std::invalid_argument("t outside beta grid coverage and no fit available");
      // extrapolate with the fitted line, clamped to [0, last measured value]
      const int steps = 64;
      double last = beta.beta.back();
      double prev_e = covered;
      double prev_b = last;
      for (int k2 = 1; k2 <= steps; ++k2) {
        double e = covered * std::pow(t / covered, static_cast<double>(k2) / steps);
        double b = std::clamp(beta.fit_c - beta.fit_slope * std::log(e), 0.0, last);
        total += integrate_cell(prev_e, prev_b, e, b);
        prev_e = e;
        prev_b = b;
      }
    }
  }
  return total / t;
}

namespace {

double pi_norm_2_inf(const WeightedGraph& g, double t, double tol) {
  // 2->infinity operator norm against the stationary probability measure
  return std::sqrt(g.total_volume) * uc_norms(g, t, tol).norm_2_inf;
}

}  // namespace

ChainCheckRecord chain_check(const WeightedGraph& g, ChainTag tag,
                             const FunctionFamily& family, const BetaCurve* beta,
                             const ChainParams& params) {
  if (params.grid.empty()) throw std::invalid_argument("chain grid is empty");
  ChainCheckRecord rec;
  rec.tag = tag;
  rec.mu = params.mu;

  // per-member functionals
  const int count = static_cast<int>(family.members.size());
  std::vector<double> ent(static_cast<size_t>(count)), energy(static_cast<size_t>(count)),
      n2sq(static_cast<size_t>(count)), n1(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    const auto& f = family.members[static_cast<size_t>(i)].values;
    ent[static_cast<size_t>(i)] = entropy(g, f);
    energy[static_cast<size_t>(i)] = bracket(g, gamma(g, f));
    n2sq[static_cast<size_t>(i)] = norm2_sq(g, f);
    n1[static_cast<size_t>(i)] = norm1(g, f);
  }
  bool any_energy = false;
  for (int i = 0; i < count; ++i)
    if (energy[static_cast<size_t>(i)] > 0.0) any_energy = true;
  rec.degenerate = !any_energy;

  switch (tag) {
    case ChainTag::uc_to_ls: {
      for (double eps : params.grid) {
        double M = std::log(pi_norm_2_inf(g, eps, params.kernel_tol));
        for (int i = 0; i < count; ++i) {
          ChainPoint pt;
          pt.where = eps;
          pt.member = i;
          pt.measured = ent[static_cast<size_t>(i)];
          pt.predicted = eps * energy[static_cast<size_t>(i)] + M * n2sq[static_cast<size_t>(i)];
          pt.margin = pt.predicted - pt.measured;
          rec.points.push_back(pt);
        }
      }
      break;
    }
    case ChainTag::ls_to_uc: {
      // M(t) integrates beta from 0, so the curve must resolve the small-eps
      // plateau (beta is bounded near 0 on a finite graph).  The family is
      // re-measured on a dense grid covering (0, t_max]; the caller's curve
      // contributes its grid points as well.
      double t_max = *std::max_element(params.grid.begin(), params.grid.end());
      double t_min = *std::min_element(params.grid.begin(), params.grid.end());
      std::vector<double> dense;
      double lo = std::min(1e-6, 1e-3 * t_min);
      const int points = 400;
      for (int i = 0; i <= points; ++i)
        dense.push_back(lo * std::pow(t_max / lo, static_cast<double>(i) / points));
      if (beta)
        for (double e : beta->eps_grid) dense.push_back(e);
      std::sort(dense.begin(), dense.end());
      dense.erase(std::unique(dense.begin(), dense.end()), dense.end());
      auto curve = beta_empirical(g, family, dense);
      if (!curve.degenerate) beta_logfit(curve);
      for (double t : params.grid) {
        ChainPoint pt;
        pt.where = t;
        pt.measured = pi_norm_2_inf(g, t, params.kernel_tol);
        pt.predicted = std::exp(davies_simon_M(curve, t));
        pt.margin = pt.predicted - pt.measured;
        rec.points.push_back(pt);
      }
      break;
    }
    case ChainTag::uc_to_nash: {
      const double mu = params.mu;
      // needed times: 2 t*(f) for each eligible member, plus the grid
      std::vector<std::pair<int, double>> tstars;
      for (int i = 0; i < count; ++i) {
        if (energy[static_cast<size_t>(i)] <= 0.0) {
          ++rec.skipped_members;
          continue;
        }
        double ts = std::pow(energy[static_cast<size_t>(i)], -2.0 / (mu + 2.0)) *
                    std::pow(n1[static_cast<size_t>(i)], 4.0 / (mu + 2.0));
        if (ts > 400.0) {
          ++rec.skipped_members;  // optimal time beyond the measurable horizon
          continue;
        }
        tstars.push_back({i, ts});
      }
      std::vector<double> eval_t;
      for (double t : params.grid) eval_t.push_back(t);
      for (auto& [i, ts] : tstars) eval_t.push_back(ts);
      // c1^2 = max over needed t of sup p(2t) * t^(mu/2)
      std::vector<double> doubled;
      doubled.reserve(eval_t.size());
      for (double t : eval_t) doubled.push_back(2.0 * t);
      auto sups = sup_kernel_continuous(g, doubled, params.kernel_tol);
      double c1sq = 0.0;
      for (size_t j = 0; j < eval_t.size(); ++j)
        c1sq = std::max(c1sq, sups[j] * std::pow(eval_t[j], mu / 2.0));
      rec.c1_squared = c1sq;
      for (auto& [i, ts] : tstars) {
        ChainPoint pt;
        pt.where = ts;
        pt.member = i;
        pt.measured = n2sq[static_cast<size_t>(i)];
        pt.predicted = 2.0 * ts * energy[static_cast<size_t>(i)] +
                       c1sq * std::pow(ts, -mu / 2.0) * n1[static_cast<size_t>(i)] *
                           n1[static_cast<size_t>(i)];
        pt.margin = pt.predicted - pt.measured;
        rec.points.push_back(pt);
      }
      rec.degenerate = tstars.empty();
      break;
    }
    case ChainTag::nash_to_uc: {
      const double mu = params.mu;
      double c2 = 0.0;
      for (int i = 0; i < count; ++i) {
        if (energy[static_cast<size_t>(i)] <= 0.0) continue;
        double q = std::pow(n2sq[static_cast<size_t>(i)], 1.0 + 2.0 / mu) /
                   (energy[static_cast<size_t>(i)] *
                    std::pow(n1[static_cast<size_t>(i)], 4.0 / mu));
        c2 = std::max(c2, q);
      }
      if (c2 <= 0.0) {
        rec.degenerate = true;
        break;
      }
      rec.c2 = c2;
      for (int i = 0; i < count; ++i) {
        if (energy[static_cast<size_t>(i)] <= 0.0) {
          ++rec.skipped_members;
          continue;
        }
        for (double t : params.grid) {
          auto ptf = heat_apply(g, family.members[static_cast<size_t>(i)].values, t,
                                params.kernel_tol);
          ChainPoint pt;
          pt.where = t;
          pt.member = i;
          pt.measured = norm2(g, ptf);
          pt.predicted =
              std::pow(c2 * mu / (2.0 * t), mu / 4.0) * n1[static_cast<size_t>(i)];
          pt.margin = pt.predicted - pt.measured;
          rec.points.push_back(pt);
        }
      }
      break;
    }
  }
  rec.worst_margin = std::numeric_limits<double>::infinity();
  for (const auto& pt : rec.points) rec.worst_margin = std::min(rec.worst_margin, pt.margin);
  if (rec.points.empty()) rec.worst_margin = 0.0;
  rec.pass = rec.worst_margin >= -params.slack;
  return rec;
}

double lsi_p_version_margin(const WeightedGraph& g, std::span<const double> f,
                            double p, double eps, const FunctionFamily& family) {
  if (!(p > 2.0)) throw std::invalid_argument("p must exceed 2");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  std::vector<double> fp2(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i] <= 0.0)
      throw std::invalid_argument("p-version check requires f > 0 everywhere");
    fp2[i] = std::pow(f[i], p / 2.0);
  }
  FunctionFamily extended = family;
  extended.graph = &g;
  extended.members.push_back({"f^(p/2)", fp2});
  double eps_arr[1] = {eps};
  auto curve = beta_empirical(g, extended, eps_arr, false);
  double beta = curve.beta.front();

  double lhs = 0.0, npp = 0.0;
  std::vector<double> fpm1(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    double v = f[i];
    lhs += g.measure[static_cast<int>(i)] * std::pow(v, p) * std::log(v);
    npp += g.measure[static_cast<int>(i)] * std::pow(v, p);
    fpm1[i] = std::pow(v, p - 1.0);
  }
  double cross = bracket(g, gamma(g, fpm1, f));
  double norm_p_val = std::pow(npp, 1.0 / p);
  double rhs = eps * cross + (2.0 * beta / p) * npp +
               npp * std::log(norm_p_val / std::pow(g.total_volume, 1.0 / p));
  return rhs - lhs;
}

}  // namespace heatineq
