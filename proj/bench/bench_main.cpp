// Benchmark of the OpenMP kernels against their serial reference
// implementations.  Checks agreement to machine precision and prints a
// timing table.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "heatineq/gradient.hpp"
#include "heatineq/graph.hpp"
#include "heatineq/inequality.hpp"
#include "heatineq/reference.hpp"
#include "heatineq/semigroup.hpp"

using namespace heatineq;

namespace {

double time_of(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void row(const char* name, double serial, double parallel, double max_diff) {
  std::printf("%-36s %9.3fs %9.3fs %7.2fx   %.1e\n", name, serial, parallel,
              serial / parallel, max_diff);
}

int window_center(const WeightedGraph& g) {
  int best = 0;
  for (int x = 1; x < g.size(); ++x)
    if (g.dist_to_boundary(x) > g.dist_to_boundary(best)) best = x;
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("first two rows compare the dense serial reference against the sparse\n");
  std::printf("OpenMP path; the last two compare the same algorithm serial vs parallel\n");
  std::printf("%-36s %10s %10s %8s   %s\n", "kernel", "serial", "parallel", "speedup",
              "max |diff|");

  {
    // all-vertex continuous kernel sup (transitivity shortcut disabled so the
    // sup really runs over every base vertex)
    auto g = torus(quick ? 12 : 24, 2);
    g.vertex_transitive = false;
    std::vector<double> times{1.0, 2.0, 4.0, 8.0};
    std::vector<double> a, b;
    double ts = time_of([&] { a = reference::sup_kernel_continuous_serial(g, times); });
    double tp = time_of([&] { b = sup_kernel_continuous(g, times); });
    double diff = 0.0;
    for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    row("sup p(t,x,y), all base vertices", ts, tp, diff);
  }
  {
    auto g = torus(quick ? 12 : 24, 2);
    g.vertex_transitive = false;
    const int K = quick ? 32 : 96;
    std::vector<double> a, b;
    double ts = time_of([&] { a = reference::sup_kernel_discrete_serial(g, K); });
    double tp = time_of([&] { b = sup_kernel_discrete(g, K); });
    double diff = 0.0;
    for (size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    row("sup p_k(x,y)/m(y), all vertices", ts, tp, diff);
  }
  {
    auto g = lattice_window(4, 2);
    int center = window_center(g);
    CurvatureBudget budget{quick ? 40 : 120, 4000};
    CurvatureReport a, b;
    double ts = time_of([&] { a = cde_verify(g, center, 6.0, 0.0, budget, 7, false); });
    double tp = time_of([&] { b = cde_verify(g, center, 6.0, 0.0, budget, 7, true); });
    row("curvature multistart search", ts, tp,
        std::abs(a.min_residual - b.min_residual));
  }
  {
    auto g = alpha_loop_transform(lattice_window(quick ? 8 : 12, 2), 0.25);
    OmegaSampler sampler;
    sampler.budget = quick ? 60 : 200;
    sampler.seed = 5;
    FaberKrahnScan a, b;
    double ts = time_of([&] { a = faber_krahn_scan(g, 2.0, sampler, std::nullopt, false); });
    double tp = time_of([&] { b = faber_krahn_scan(g, 2.0, sampler, std::nullopt, true); });
    row("Faber-Krahn domain scan", ts, tp,
        std::abs(a.absolute.value - b.absolute.value));
  }
  return 0;
}
