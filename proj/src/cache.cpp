#include "heatineq/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace heatineq {

std::string cache_header(const KernelCacheKey& key) {
  char buf[64];
  std::ostringstream h;
  h << "heatineq-kernel-cache v1";
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(key.graph->content_hash()));
  h << " graph=" << buf;
  h << " generator=" << key.graph->generator;
  h << " base=" << key.base;
  h << " K=" << key.k_max;
  std::snprintf(buf, sizeof buf, "%.17g", key.tol);
  h << " tol=" << buf;
  h << " times=";
  for (size_t i = 0; i < key.times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", key.times[i]);
    h << (i ? "," : "") << buf;
  }
  return h.str();
}

std::string cache_path(const std::string& dir, const KernelCacheKey& key) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "hk-%016llx-x%d.txt",
                static_cast<unsigned long long>(key.graph->content_hash()), key.base);
  return dir + "/" + buf;
}

std::optional<HeatKernelTable> cache_load(const std::string& dir,
                                          const KernelCacheKey& key) {
  std::ifstream in(cache_path(dir, key));
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  if (header != cache_header(key)) return std::nullopt;  // stale or mismatched
  HeatKernelTable table;
  table.graph = key.graph;
  table.base = key.base;
  const size_t n = static_cast<size_t>(key.graph->size());
  std::string tag;
  while (in >> tag) {
    if (tag == "D") {
      int k;
      in >> k;
      std::vector<double> row(n);
      for (auto& v : row) in >> v;
      if (!in) return std::nullopt;  // truncated row
      table.discrete.push_back(std::move(row));
    } else if (tag == "C") {
      ContinuousRow row;
      in >> row.t >> row.tail_bound >> row.truncation_order;
      row.density.resize(n);
      for (auto& v : row.density) in >> v;
      if (!in) return std::nullopt;
      table.continuous.push_back(std::move(row));
    } else {
      return std::nullopt;  // corrupted
    }
  }
  if (table.discrete.size() != static_cast<size_t>(key.k_max) + 1) return std::nullopt;
  if (table.continuous.size() != key.times.size()) return std::nullopt;
  return table;
}

void cache_store(const std::string& dir, const KernelCacheKey& key,
                 const HeatKernelTable& table) {
  std::filesystem::create_directories(dir);
  std::ofstream out(cache_path(dir, key));
  if (!out) return;  // cache is best-effort
  out << cache_header(key) << "\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << " " << buf;
  };
  for (size_t k = 0; k < table.discrete.size(); ++k) {
    out << "D " << k;
    for (double v : table.discrete[k]) put(v);
    out << "\n";
  }
  for (const auto& row : table.continuous) {
    out << "C";
    put(row.t);
    put(row.tail_bound);
    out << " " << row.truncation_order;
    for (double v : row.density) put(v);
    out << "\n";
  }
}

std::string default_cache_dir() {
  const char* env = std::getenv("HEATINEQ_CACHE");
  return env ? std::string(env) : std::string();
}

}  // namespace heatineq
