#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace heatineq {

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  long long evaluations = 0;
};

// Deterministic downhill simplex with the standard coefficients.  `budget`
// caps objective evaluations; terminates early once the simplex collapses.
inline NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, double step, long long budget,
    double size_tol = 1e-12) {
  const size_t dim = start.size();
  NelderMeadResult res;
  std::vector<std::vector<double>> pts;
  std::vector<double> vals;
  pts.push_back(start);
  for (size_t i = 0; i < dim; ++i) {
    auto p = start;
    p[i] += step;
    pts.push_back(std::move(p));
  }
  for (auto& p : pts) {
    vals.push_back(f(p));
    ++res.evaluations;
  }
  std::vector<size_t> order(pts.size());
  auto sort_order = [&] {
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return vals[a] < vals[b]; });
  };
  std::vector<double> centroid(dim), trial(dim), trial2(dim);
  while (res.evaluations < budget) {
    sort_order();
    size_t best = order.front(), worst = order.back(), second = order[order.size() - 2];
    double spread = 0.0;
    for (size_t i = 0; i < dim; ++i)
      spread = std::max(spread, std::abs(pts[worst][i] - pts[best][i]));
    if (spread < size_tol && std::abs(vals[worst] - vals[best]) < size_tol) break;
    for (size_t i = 0; i < dim; ++i) {
      double c = 0.0;
      for (size_t j = 0; j < pts.size(); ++j)
        if (j != worst) c += pts[j][i];
      centroid[i] = c / static_cast<double>(dim);
    }
    for (size_t i = 0; i < dim; ++i) trial[i] = centroid[i] + (centroid[i] - pts[worst][i]);
    double fr = f(trial);
    ++res.evaluations;
    if (fr < vals[best]) {
      for (size_t i = 0; i < dim; ++i)
        trial2[i] = centroid[i] + 2.0 * (centroid[i] - pts[worst][i]);
      double fe = f(trial2);
      ++res.evaluations;
      if (fe < fr) {
        pts[worst] = trial2;
        vals[worst] = fe;
      } else {
        pts[worst] = trial;
        vals[worst] = fr;
      }
    } else if (fr < vals[second]) {
      pts[worst] = trial;
      vals[worst] = fr;
    } else {
      bool outside = fr < vals[worst];
      const auto& base = outside ? trial : pts[worst];
      for (size_t i = 0; i < dim; ++i) trial2[i] = centroid[i] + 0.5 * (base[i] - centroid[i]);
      double fc = f(trial2);
      ++res.evaluations;
      if (fc < std::min(fr, vals[worst])) {
        pts[worst] = trial2;
        vals[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (size_t j = 0; j < pts.size(); ++j) {
          if (j == best) continue;
          for (size_t i = 0; i < dim; ++i)
            pts[j][i] = pts[best][i] + 0.5 * (pts[j][i] - pts[best][i]);
          vals[j] = f(pts[j]);
          ++res.evaluations;
        }
      }
    }
  }
  sort_order();
  res.x = pts[order.front()];
  res.value = vals[order.front()];
  return res;
}

}  // namespace heatineq
