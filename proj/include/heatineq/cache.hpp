#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heatineq/graph.hpp"
#include "heatineq/semigroup.hpp"

namespace heatineq {

// On-disk kernel cache: one file per (graph content hash, base vertex).
// The first line is a versioned header recording the generator spec, row
// count and tolerances; a cache hit requires an exact header match.
struct KernelCacheKey {
  const WeightedGraph* graph = nullptr;
  int base = 0;
  int k_max = 0;
  std::vector<double> times;
  double tol = 0.0;
};

std::string cache_header(const KernelCacheKey& key);
std::string cache_path(const std::string& dir, const KernelCacheKey& key);

std::optional<HeatKernelTable> cache_load(const std::string& dir,
                                          const KernelCacheKey& key);
void cache_store(const std::string& dir, const KernelCacheKey& key,
                 const HeatKernelTable& table);

// HEATINEQ_CACHE environment variable, or empty when unset.
std::string default_cache_dir();

}  // namespace heatineq
