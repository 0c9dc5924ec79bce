#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "heatineq/graph.hpp"

namespace heatineq {

// Real-valued vertex function.  All norms and sums are taken against the
// vertex measure m.
struct GraphFunction {
  const WeightedGraph* graph = nullptr;
  std::vector<double> values;

  GraphFunction() = default;
  GraphFunction(const WeightedGraph& g, std::vector<double> v)
      : graph(&g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != g.size())
      throw std::invalid_argument("function size does not match graph");
  }
  GraphFunction(const WeightedGraph& g, double fill)
      : graph(&g), values(static_cast<size_t>(g.size()), fill) {}

  double& operator[](int x) { return values[static_cast<size_t>(x)]; }
  double operator[](int x) const { return values[static_cast<size_t>(x)]; }
};

// <u> = sum_x m(x) u(x)
inline double bracket(const WeightedGraph& g, std::span<const double> u) {
  double s = 0.0;
  for (int x = 0; x < g.size(); ++x) s += g.measure[x] * u[static_cast<size_t>(x)];
  return s;
}

// <f, h> = sum_x m(x) f(x) h(x)
inline double inner(const WeightedGraph& g, std::span<const double> f,
                    std::span<const double> h) {
  double s = 0.0;
  for (int x = 0; x < g.size(); ++x)
    s += g.measure[x] * f[static_cast<size_t>(x)] * h[static_cast<size_t>(x)];
  return s;
}

inline double norm_p(const WeightedGraph& g, std::span<const double> f, double p) {
  if (p <= 0.0) throw std::invalid_argument("p must be positive");
  double s = 0.0;
  for (int x = 0; x < g.size(); ++x)
    s += g.measure[x] * std::pow(std::abs(f[static_cast<size_t>(x)]), p);
  return std::pow(s, 1.0 / p);
}

inline double norm_inf(std::span<const double> f) {
  double s = 0.0;
  for (double v : f) s = std::max(s, std::abs(v));
  return s;
}

inline double norm1(const WeightedGraph& g, std::span<const double> f) {
  double s = 0.0;
  for (int x = 0; x < g.size(); ++x) s += g.measure[x] * std::abs(f[static_cast<size_t>(x)]);
  return s;
}

inline double norm2_sq(const WeightedGraph& g, std::span<const double> f) {
  return inner(g, f, f);
}

inline double norm2(const WeightedGraph& g, std::span<const double> f) {
  return std::sqrt(norm2_sq(g, f));
}

}  // namespace heatineq
