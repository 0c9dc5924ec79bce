#pragma once

#include <cmath>
#include <cstdint>

namespace heatineq {

// SplitMix64. Used everywhere randomness is needed so that results are
// reproducible across compilers and standard libraries.
struct Rng {
  std::uint64_t state;

  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return (next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // integer in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
};

// Deterministic seed derivation for independent sub-streams (restart i of a
// multistart run, member i of a family, ...).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  Rng r(master ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
  r.next();
  return r.next();
}

}  // namespace heatineq
