#include "heatineq/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heatineq::reference {

std::vector<std::vector<double>> dense_transition(const WeightedGraph& g) {
  const int n = g.size();
  std::vector<std::vector<double>> P(static_cast<size_t>(n),
                                     std::vector<double>(static_cast<size_t>(n), 0.0));
  for (int x = 0; x < n; ++x)
    for (int i = g.offsets[x]; i < g.offsets[x + 1]; ++i)
      P[static_cast<size_t>(x)][static_cast<size_t>(g.nbr[i])] +=
          g.weight[i] / g.measure[x];
  return P;
}

std::vector<std::vector<double>> discrete_rows_dense(const WeightedGraph& g, int x,
                                                     int K) {
  if (g.has_boundary() && K >= g.dist_to_boundary(x))
    throw std::invalid_argument("boundary guard violated");
  const int n = g.size();
  auto P = dense_transition(g);
  std::vector<std::vector<double>> rows;
  std::vector<double> row(static_cast<size_t>(n), 0.0);
  row[static_cast<size_t>(x)] = 1.0;
  rows.push_back(row);
  for (int k = 1; k <= K; ++k) {
    std::vector<double> next(static_cast<size_t>(n), 0.0);
    for (int y = 0; y < n; ++y) {
      double v = rows.back()[static_cast<size_t>(y)];
      if (v == 0.0) continue;
      for (int z = 0; z < n; ++z)
        next[static_cast<size_t>(z)] += v * P[static_cast<size_t>(y)][static_cast<size_t>(z)];
    }
    rows.push_back(std::move(next));
  }
  return rows;
}

std::vector<double> sup_kernel_discrete_serial(const WeightedGraph& g, int K) {
  const int n = g.size();
  std::vector<double> out(static_cast<size_t>(K) + 1, 0.0);
  for (int x = 0; x < n; ++x) {
    auto rows = discrete_rows_dense(g, x, K);
    for (int k = 0; k <= K; ++k)
      for (int y = 0; y < n; ++y)
        out[static_cast<size_t>(k)] = std::max(
            out[static_cast<size_t>(k)],
            rows[static_cast<size_t>(k)][static_cast<size_t>(y)] / g.measure[y]);
  }
  return out;
}

std::vector<double> sup_kernel_continuous_serial(const WeightedGraph& g,
                                                 std::span<const double> times,
                                                 double tol) {
  const int n = g.size();
  double t_max = 0.0;
  for (double t : times) t_max = std::max(t_max, t);
  const int K = uniformization_order(t_max, tol);
  std::vector<double> out(times.size(), 0.0);
  for (int x = 0; x < n; ++x) {
    auto rows = discrete_rows_dense(g, x, K);
    for (size_t ti = 0; ti < times.size(); ++ti) {
      double t = times[ti];
      int Kt = uniformization_order(t, tol);
      std::vector<double> acc(static_cast<size_t>(n), 0.0);
      double log_w = -t;
      for (int k = 0; k <= Kt; ++k) {
        if (k > 0) log_w += std::log(t) - std::log(static_cast<double>(k));
        const double w = std::exp(log_w);
        for (int y = 0; y < n; ++y)
          acc[static_cast<size_t>(y)] += w * rows[static_cast<size_t>(k)][static_cast<size_t>(y)];
      }
      for (int y = 0; y < n; ++y)
        out[ti] = std::max(out[ti], acc[static_cast<size_t>(y)] / g.measure[y]);
    }
  }
  return out;
}

UcNorms uc_norms_serial(const WeightedGraph& g, double t, double tol) {
  const int n = g.size();
  const int K = uniformization_order(2.0 * t, tol);
  UcNorms res;
  res.t = t;
  double diag = 0.0;
  for (int x = 0; x < n; ++x) {
    auto rows = discrete_rows_dense(g, x, K);
    for (double tt : {t, 2.0 * t}) {
      int Kt = uniformization_order(tt, tol);
      std::vector<double> acc(static_cast<size_t>(n), 0.0);
      double log_w = -tt;
      for (int k = 0; k <= Kt; ++k) {
        if (k > 0) log_w += std::log(tt) - std::log(static_cast<double>(k));
        const double w = std::exp(log_w);
        for (int y = 0; y < n; ++y)
          acc[static_cast<size_t>(y)] += w * rows[static_cast<size_t>(k)][static_cast<size_t>(y)];
      }
      if (tt == t) {
        for (int y = 0; y < n; ++y)
          res.norm_1_inf = std::max(res.norm_1_inf, acc[static_cast<size_t>(y)] / g.measure[y]);
      } else {
        diag = std::max(diag, acc[static_cast<size_t>(x)] / g.measure[x]);
      }
    }
  }
  res.norm_2_inf = std::sqrt(diag);
  return res;
}

}  // namespace heatineq::reference
