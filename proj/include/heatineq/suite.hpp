#pragma once

#include <cstdint>
#include <string>

#include "heatineq/config.hpp"
#include "heatineq/graph.hpp"
#include "heatineq/report.hpp"

namespace heatineq {

struct SuiteOptions {
  bool seed_override = false;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  bool no_witness = false;
  std::string cache = "";  // "" = config/env default, "off" = disabled, else dir
};

// [graph] section: generator spec or edge_list path, optional alpha_loop.
WeightedGraph graph_from_config(const RunConfig& cfg);

// "center" resolves to the vertex farthest from the boundary (vertex 0 on
// boundary-free graphs).
int resolve_vertex(const WeightedGraph& g, const std::string& spec);

// Validates every requested analysis against the boundary guard before any
// computation happens; throws ConfigError naming the offending analysis.
void validate_config(const RunConfig& cfg, const WeightedGraph& g);

// Individual analyses (used by the CLI subcommands).
void analysis_gen(const RunConfig& cfg, const WeightedGraph& g, Report& report);
void analysis_kernel(const RunConfig& cfg, const WeightedGraph& g,
                     const SuiteOptions& opt, std::uint64_t seed, Report& report);
void analysis_curvature(const RunConfig& cfg, const WeightedGraph& g,
                        const SuiteOptions& opt, std::uint64_t seed, Report& report);
void analysis_inequalities(const RunConfig& cfg, const WeightedGraph& g,
                           const SuiteOptions& opt, std::uint64_t seed,
                           Report& report);
void analysis_chains(const RunConfig& cfg, const WeightedGraph& g,
                     const SuiteOptions& opt, std::uint64_t seed, Report& report);

// Full pipeline in dependency order; returns the process exit code:
// 0 all checks passed, 2 some check failed.  Configuration problems throw
// ConfigError (exit code 1 in the CLI).
int run_suite(const RunConfig& cfg, const SuiteOptions& opt, Report& report);

}  // namespace heatineq
