// heatineq command-line tool: graph generation, heat-kernel analysis,
// curvature search, functional-inequality constants and theorem-chain checks,
// driven by a sectioned key-value config file.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "heatineq/config.hpp"
#include "heatineq/report.hpp"
#include "heatineq/rng.hpp"
#include "heatineq/suite.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string cache;
  bool no_witness = false;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* c = cmd->add_option("--config", args.config_path, "config file path");
  if (config_required) c->required();
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "master seed override")
      ->each([&](const std::string&) { args.seed_given = true; });
  cmd->add_option("--cache", args.cache, "kernel cache directory, or 'off'");
  cmd->add_flag("--no-witness", args.no_witness, "omit witness vectors from records");
}

heatineq::SuiteOptions options_from(const CommonArgs& args) {
  heatineq::SuiteOptions opt;
  opt.seed_override = args.seed_given;
  opt.seed = args.seed;
  opt.out_dir = args.out_dir;
  opt.no_witness = args.no_witness;
  opt.cache = args.cache;
  return opt;
}

int run_analyses(const CommonArgs& args, const std::string& only) {
  using namespace heatineq;
  RunConfig cfg = RunConfig::from_file(args.config_path);
  if (!only.empty()) cfg.set("suite", "analyses", only);
  SuiteOptions opt = options_from(args);
  Report report;
  int code = run_suite(cfg, opt, report);
  report.write(opt.out_dir);
  for (const auto& line : report.summary) std::printf("%s\n", line.c_str());
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heat kernels, curvature and functional inequalities on finite weighted graphs"};
  app.require_subcommand(1);

  CommonArgs gen_args, kernel_args, curv_args, ineq_args, chains_args, suite_args;
  std::string gen_graph, gen_edges_out;

  auto* gen = app.add_subcommand("gen", "materialize and inspect a graph");
  add_common(gen, gen_args, false);
  gen->add_option("--graph", gen_graph, "inline generator spec, e.g. torus(8,2)");
  gen->add_option("--edges", gen_edges_out, "dump the edge list to a file");

  auto* kernel = app.add_subcommand("kernel", "heat-kernel tables and decay fits");
  add_common(kernel, kernel_args, true);
  auto* curvature = app.add_subcommand("curvature", "curvature-condition search");
  add_common(curvature, curv_args, true);
  auto* ineq = app.add_subcommand("ineq", "inequality constants (FK, Nash, log-Sobolev)");
  add_common(ineq, ineq_args, true);
  auto* chains = app.add_subcommand("chains", "quantitative theorem-chain checks");
  add_common(chains, chains_args, true);
  auto* suite = app.add_subcommand("suite", "run all configured analyses");
  add_common(suite, suite_args, true);

  std::string plot_report, plot_table, plot_out;
  auto* plotdata = app.add_subcommand("plotdata", "extract a CSV table from a report");
  plotdata->add_option("--report", plot_report, "records.jsonl path")->required();
  plotdata->add_option("--table", plot_table, "table name")->required();
  plotdata->add_option("--out", plot_out, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    using namespace heatineq;
    if (gen->parsed()) {
      RunConfig cfg = gen_args.config_path.empty()
                          ? RunConfig::from_string("")
                          : RunConfig::from_file(gen_args.config_path);
      if (!gen_graph.empty()) cfg.set("graph", "generator", gen_graph);
      cfg.set("suite", "analyses", "gen");
      SuiteOptions opt = options_from(gen_args);
      Report report;
      int code = run_suite(cfg, opt, report);
      if (!gen_edges_out.empty()) save_edge_list(graph_from_config(cfg), gen_edges_out);
      report.write(opt.out_dir);
      for (const auto& line : report.summary) std::printf("%s\n", line.c_str());
      return code;
    }
    if (kernel->parsed()) return run_analyses(kernel_args, "kernel");
    if (curvature->parsed()) return run_analyses(curv_args, "curvature");
    if (ineq->parsed()) return run_analyses(ineq_args, "inequalities");
    if (chains->parsed()) return run_analyses(chains_args, "chains");
    if (suite->parsed()) return run_analyses(suite_args, "");
    if (plotdata->parsed()) {
      auto table = heatineq::table_from_records(plot_report, plot_table);
      bool log_log = plot_table == "due-decay" || plot_table == "cue-decay";
      heatineq::write_csv(table, plot_out, log_log);
      std::printf("wrote %s (%zu rows)\n", plot_out.c_str(), table.rows.size());
      return 0;
    }
  } catch (const heatineq::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
