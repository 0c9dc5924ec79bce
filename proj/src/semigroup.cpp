#include "heatineq/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatineq {

std::vector<double> laplacian_apply(const WeightedGraph& g,
                                    std::span<const double> f) {
  const int n = g.size();
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("function size does not match graph");
  std::vector<double> out(static_cast<size_t>(n));
  for (int x = 0; x < n; ++x) {
    double acc = 0.0;
    for (int i = g.offsets[x]; i < g.offsets[x + 1]; ++i)
      acc += g.weight[i] * (f[static_cast<size_t>(g.nbr[i])] - f[static_cast<size_t>(x)]);
    out[static_cast<size_t>(x)] = acc / g.measure[x];
  }
  return out;
}

void transition_step(const WeightedGraph& g, std::span<const double> in,
                     std::span<double> out) {
  const int n = g.size();
  for (int z = 0; z < n; ++z) {
    double acc = 0.0;
    for (int i = g.offsets[z]; i < g.offsets[z + 1]; ++i) {
      int y = g.nbr[i];
      acc += in[static_cast<size_t>(y)] * g.weight[i] / g.measure[y];
    }
    out[static_cast<size_t>(z)] = acc;
  }
}

void transition_apply(const WeightedGraph& g, std::span<const double> f,
                      std::span<double> out) {
  const int n = g.size();
  for (int x = 0; x < n; ++x) {
    double acc = 0.0;
    for (int i = g.offsets[x]; i < g.offsets[x + 1]; ++i)
      acc += g.weight[i] * f[static_cast<size_t>(g.nbr[i])];
    out[static_cast<size_t>(x)] = acc / g.measure[x];
  }
}

HeatKernelTable discrete_kernel(const WeightedGraph& g, int x, int K) {
  if (x < 0 || x >= g.size()) throw std::invalid_argument("unknown base vertex");
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  if (g.has_boundary() && K >= g.dist_to_boundary(x))
    throw std::invalid_argument(
        "boundary guard: walk of length " + std::to_string(K) +
        " from vertex " + std::to_string(x) + " reaches the boundary");
  HeatKernelTable table;
  table.graph = &g;
  table.base = x;
  table.discrete.reserve(static_cast<size_t>(K) + 1);
  std::vector<double> row(static_cast<size_t>(g.size()), 0.0);
  row[static_cast<size_t>(x)] = 1.0;
  table.discrete.push_back(row);
  std::vector<double> next(row.size());
  for (int k = 1; k <= K; ++k) {
    transition_step(g, table.discrete.back(), next);
    table.discrete.push_back(next);
  }
  return table;
}

int uniformization_order(double t, double tol, double* tail_out) {
  if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  // log-space weights so large t cannot underflow e^-t
  double log_w = -t;
  double cum = std::exp(log_w);
  int k = 0;
  while (1.0 - cum > tol) {
    ++k;
    log_w += std::log(t) - std::log(static_cast<double>(k));
    cum += std::exp(log_w);
    if (k > 200000) throw std::runtime_error("uniformization failed to converge");
  }
  if (tail_out) *tail_out = std::max(0.0, 1.0 - cum);
  return k;
}


namespace {

ContinuousRow continuous_row_from(const HeatKernelTable& table, double t, double tol) {
  const WeightedGraph& g = *table.graph;
  double tail = 0.0;
  int K = uniformization_order(t, tol, &tail);
  if (K > table.max_k())
    throw std::logic_error("discrete table shorter than truncation order");
  ContinuousRow row;
  row.t = t;
  row.tail_bound = tail;
  row.truncation_order = K;
  std::vector<double> acc(static_cast<size_t>(g.size()), 0.0);
  double log_w = -t;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) log_w += std::log(t) - std::log(static_cast<double>(k));
    const double w = std::exp(log_w);
    const auto& pk = table.discrete[static_cast<size_t>(k)];
    for (size_t y = 0; y < acc.size(); ++y) acc[y] += w * pk[y];
  }
  row.density.resize(acc.size());
  for (int y = 0; y < g.size(); ++y)
    row.density[static_cast<size_t>(y)] = acc[static_cast<size_t>(y)] / g.measure[y];
  return row;
}

}  // namespace

void add_continuous_rows(HeatKernelTable& table, std::span<const double> times,
                         double tol) {
  const WeightedGraph& g = *table.graph;
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, t);
  int K_needed = uniformization_order(t_max, tol);
  if (g.has_boundary() && K_needed >= g.dist_to_boundary(table.base))
    throw std::invalid_argument(
        "boundary guard: uniformization order " + std::to_string(K_needed) +
        " reaches the boundary (tolerance unreachable within the guard)");
  if (K_needed > table.max_k()) {
    std::vector<double> next(static_cast<size_t>(g.size()));
    while (table.max_k() < K_needed) {
      transition_step(g, table.discrete.back(), next);
      table.discrete.push_back(next);
    }
  }
  for (double t : times) table.continuous.push_back(continuous_row_from(table, t, tol));
}

HeatKernelTable continuous_kernel(const WeightedGraph& g, int x,
                                  std::span<const double> times, double tol) {
  HeatKernelTable table = discrete_kernel(g, x, 0);
  add_continuous_rows(table, times, tol);
  return table;
}

std::vector<double> heat_apply(const WeightedGraph& g, std::span<const double> f,
                               double t, double tol) {
  const int n = g.size();
  if (static_cast<int>(f.size()) != n)
    throw std::invalid_argument("function size does not match graph");
  if (t == 0.0) return {f.begin(), f.end()};
  int K = uniformization_order(t, tol);
  if (g.has_boundary()) {
    int guard = std::numeric_limits<int>::max();
    for (int x = 0; x < n; ++x)
      if (f[static_cast<size_t>(x)] != 0.0) guard = std::min(guard, g.dist_to_boundary(x));
    if (K >= guard)
      throw std::invalid_argument("boundary guard: heat flow reaches the boundary");
  }
  std::vector<double> acc(static_cast<size_t>(n), 0.0);
  std::vector<double> cur(f.begin(), f.end());
  std::vector<double> next(static_cast<size_t>(n));
  double log_w = -t;
  for (int k = 0; k <= K; ++k) {
    if (k > 0) {
      log_w += std::log(t) - std::log(static_cast<double>(k));
      transition_apply(g, cur, next);
      cur.swap(next);
    }
    const double w = std::exp(log_w);
    for (int x = 0; x < n; ++x) acc[static_cast<size_t>(x)] += w * cur[static_cast<size_t>(x)];
  }
  return acc;
}

namespace {

// sup over y of p(t, x, .) rows for every base vertex, parallel over bases.
// Results are written per-vertex and reduced serially, so output does not
// depend on scheduling.
std::vector<double> all_vertex_sup(const WeightedGraph& g,
                                   std::span<const double> times, double tol) {
  const int n = g.size();
  std::vector<std::vector<double>> per_vertex(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int x = 0; x < n; ++x) {
    auto table = continuous_kernel(g, x, times, tol);
    std::vector<double> sups;
    sups.reserve(times.size());
    for (const auto& row : table.continuous)
      sups.push_back(*std::max_element(row.density.begin(), row.density.end()));
    per_vertex[static_cast<size_t>(x)] = std::move(sups);
  }
  std::vector<double> out(times.size(), 0.0);
  for (int x = 0; x < n; ++x)
    for (size_t i = 0; i < times.size(); ++i)
      out[i] = std::max(out[i], per_vertex[static_cast<size_t>(x)][i]);
  return out;
}

}  // namespace

std::vector<double> sup_kernel_continuous(const WeightedGraph& g,
                                          std::span<const double> times,
                                          double tol) {
  if (g.vertex_transitive) {
    auto table = continuous_kernel(g, 0, times, tol);
    std::vector<double> out;
    out.reserve(times.size());
    for (const auto& row : table.continuous)
      out.push_back(*std::max_element(row.density.begin(), row.density.end()));
    return out;
  }
  return all_vertex_sup(g, times, tol);
}

std::vector<double> sup_kernel_discrete(const WeightedGraph& g, int K) {
  const int n = g.size();
  std::vector<double> out(static_cast<size_t>(K) + 1, 0.0);
  if (g.vertex_transitive) {
    auto table = discrete_kernel(g, 0, K);
    for (int k = 0; k <= K; ++k) {
      const auto& row = table.discrete[static_cast<size_t>(k)];
      double s = 0.0;
      for (int y = 0; y < n; ++y)
        s = std::max(s, row[static_cast<size_t>(y)] / g.measure[y]);
      out[static_cast<size_t>(k)] = s;
    }
    return out;
  }
  std::vector<std::vector<double>> per_vertex(static_cast<size_t>(n));
#pragma omp parallel for schedule(dynamic)
  for (int x = 0; x < n; ++x) {
    auto table = discrete_kernel(g, x, K);
    std::vector<double> sups(static_cast<size_t>(K) + 1, 0.0);
    for (int k = 0; k <= K; ++k) {
      const auto& row = table.discrete[static_cast<size_t>(k)];
      for (int y = 0; y < n; ++y)
        sups[static_cast<size_t>(k)] =
            std::max(sups[static_cast<size_t>(k)], row[static_cast<size_t>(y)] / g.measure[y]);
    }
    per_vertex[static_cast<size_t>(x)] = std::move(sups);
  }
  for (int x = 0; x < n; ++x)
    for (int k = 0; k <= K; ++k)
      out[static_cast<size_t>(k)] =
          std::max(out[static_cast<size_t>(k)], per_vertex[static_cast<size_t>(x)][k]);
  return out;
}

UcNorms uc_norms(const WeightedGraph& g, double t, double tol) {
  UcNorms res;
  res.t = t;
  const double times[2] = {t, 2.0 * t};
  if (g.vertex_transitive) {
    auto table = continuous_kernel(g, 0, times, tol);
    const auto& row_t = table.continuous[0].density;
    const auto& row_2t = table.continuous[1].density;
    res.norm_1_inf = *std::max_element(row_t.begin(), row_t.end());
    res.norm_2_inf = std::sqrt(row_2t[0]);
    return res;
  }
  const int n = g.size();
  std::vector<double> sup_t(static_cast<size_t>(n), 0.0), diag_2t(static_cast<size_t>(n), 0.0);
#pragma omp parallel for schedule(dynamic)
  for (int x = 0; x < n; ++x) {
    auto table = continuous_kernel(g, x, times, tol);
    const auto& row_t = table.continuous[0].density;
    const auto& row_2t = table.continuous[1].density;
    sup_t[static_cast<size_t>(x)] = *std::max_element(row_t.begin(), row_t.end());
    diag_2t[static_cast<size_t>(x)] = row_2t[static_cast<size_t>(x)];
  }
  res.norm_1_inf = *std::max_element(sup_t.begin(), sup_t.end());
  res.norm_2_inf = std::sqrt(*std::max_element(diag_2t.begin(), diag_2t.end()));
  return res;
}

std::pair<double, double> linear_fit(std::span<const double> x,
                                     std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("degenerate abscissae in linear_fit");
  double b = (n * sxy - sx * sy) / denom;
  double a = (sy - b * sx) / n;
  return {a, b};
}

ExponentFit exponent_fit(const WeightedGraph& g, KernelMode mode,
                         std::span<const double> window_grid, double tol) {
  ExponentFit fit;
  fit.mode = mode;
  fit.grid.assign(window_grid.begin(), window_grid.end());
  std::sort(fit.grid.begin(), fit.grid.end());
  if (mode == KernelMode::discrete) {
    int K = static_cast<int>(std::llround(fit.grid.back()));
    auto sup = sup_kernel_discrete(g, K);
    for (double kd : fit.grid) {
      int k = static_cast<int>(std::llround(kd));
      fit.sup_values.push_back(sup[static_cast<size_t>(k)]);
    }
  } else {
    fit.sup_values = sup_kernel_continuous(g, fit.grid, tol);
  }
  // equilibrium of the normalized kernel is 1/V(G) in both conventions
  const double equilibrium = 1.0 / g.total_volume;
  std::vector<double> lx, ly;
  for (size_t i = 0; i < fit.grid.size(); ++i) {
    bool sat = fit.sup_values[i] < 2.0 * equilibrium;
    fit.saturated.push_back(sat ? 1 : 0);
    fit.any_saturated |= sat;
    if (!sat && fit.grid[i] > 0.0 && fit.sup_values[i] > 0.0) {
      fit.window_grid.push_back(fit.grid[i]);
      lx.push_back(std::log(fit.grid[i]));
      ly.push_back(std::log(fit.sup_values[i]));
    }
  }
  if (lx.size() < 4)
    throw std::invalid_argument("exponent_fit window has fewer than 4 clean points");
  auto [a, b] = linear_fit(lx, ly);
  fit.amplitude = std::exp(a);
  fit.exponent = -b;
  for (size_t i = 0; i < lx.size(); ++i) {
    double r = a + b * lx[i] - ly[i];
    fit.log_residuals.push_back(r);
    fit.max_abs_log_residual = std::max(fit.max_abs_log_residual, std::abs(r));
  }
  return fit;
}

}  // namespace heatineq
