#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "heatineq/cache.hpp"
#include "heatineq/config.hpp"
#include "heatineq/report.hpp"
#include "heatineq/semigroup.hpp"
#include "heatineq/suite.hpp"

using namespace heatineq;
namespace fs = std::filesystem;

namespace {

fs::path unique_dir(const std::string& tag) {
  auto p = fs::temp_directory_path() / ("heatineq_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kSmallConfig = R"(
[graph]
generator = torus(8,2)
alpha_loop = 0.25

[gen]
growth_r_max = 2

[kernel]
base = 0
k_max = 24
k_fit_min = 6
k_fit_max = 24
t_min = 1
t_max = 6
t_points = 5
tol = 1e-10

[curvature]
vertex = 0
n = 9.06
K = 0
restarts = 8
max_iterations = 1500

[inequalities]
D = 2
fk = 1
fk_budget = 12
beta = 1
eps_min = 0.25
eps_max = 16
eps_points = 6
quotients = 1
family_heat_times = 3
family_randoms = 3
family_perturbed = 2
family_bumps = 2

[chains]
which = a,d
mu = 2
t_min = 0.5
t_max = 3
t_points = 3
family_heat_times = 3
family_randoms = 3
family_perturbed = 2
family_bumps = 2

[suite]
analyses = gen,kernel,curvature,inequalities,chains
seed = 13
)";

}  // namespace

TEST_CASE("config parsing: sections, defaults, grids, errors") {
  auto cfg = RunConfig::from_string(
      "[graph]\ngenerator = cycle(6)  # a comment\n\n[kernel]\nk_max = 12\n"
      "t = 1,2,4\n[x]\nflag = true\nv = 2.5\n");
  CHECK(cfg.require_str("graph", "generator") == "cycle(6)");
  CHECK(cfg.get_int("kernel", "k_max", 0) == 12);
  CHECK(cfg.get_double("kernel", "missing", 7.5) == 7.5);
  CHECK(cfg.get_bool("x", "flag", false));
  auto grid = cfg.get_grid("kernel", "t");
  CHECK(grid == std::vector<double>{1.0, 2.0, 4.0});
  CHECK_THROWS_AS(cfg.require_str("kernel", "absent"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_string("[unclosed\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::from_string("keyonly\n"), ConfigError);
  CHECK_THROWS_AS(cfg.get_grid("kernel", "eps"), ConfigError);

  auto log_grid = RunConfig::from_string("[s]\nt_min = 1\nt_max = 4\nt_points = 3\n")
                      .get_grid("s", "t");
  CHECK(log_grid.size() == 3);
  CHECK(log_grid[0] == doctest::Approx(1.0));
  CHECK(log_grid[1] == doctest::Approx(2.0));
  CHECK(log_grid[2] == doctest::Approx(4.0));
}

TEST_CASE("graph_from_config applies the loop transform") {
  auto cfg = RunConfig::from_string("[graph]\ngenerator = cycle(4)\nalpha_loop = 0.25\n");
  auto g = graph_from_config(cfg);
  CHECK(g.has_loops);
  CHECK(g.size() == 4);

  SUBCASE("explicit edge-list files load through the config") {
    auto path = fs::temp_directory_path() / "heatineq_cfg_edges.txt";
    {
      std::ofstream out(path);
      out << "# a weighted triangle\n0 1 1\n1 2 2\n0 2 0.5\n";
    }
    auto cfg2 = RunConfig::from_string("[graph]\nedge_list = " + path.string() + "\n");
    auto h = graph_from_config(cfg2);
    CHECK(h.size() == 3);
    CHECK(h.measure[1] == doctest::Approx(3.0));
    fs::remove(path);
  }
}

TEST_CASE("validation rejects guard violations before running") {
  SUBCASE("kernel horizon exceeds the window guard") {
    auto cfg = RunConfig::from_string(
        "[graph]\ngenerator = lattice_window(5,1)\n"
        "[kernel]\nbase = center\nk_max = 12\nfit = 0\n"
        "[suite]\nanalyses = kernel\n");
    auto g = graph_from_config(cfg);
    CHECK_THROWS_AS(validate_config(cfg, g), ConfigError);
  }
  SUBCASE("curvature vertex too close to the boundary") {
    auto cfg = RunConfig::from_string(
        "[graph]\ngenerator = lattice_window(2,1)\n"
        "[curvature]\nvertex = center\n"
        "[suite]\nanalyses = curvature\n");
    auto g = graph_from_config(cfg);
    CHECK_THROWS_AS(validate_config(cfg, g), ConfigError);
  }
  SUBCASE("chains need a boundary-free graph") {
    auto cfg = RunConfig::from_string(
        "[graph]\ngenerator = lattice_window(6,1)\n"
        "[chains]\nt = 1,2\n"
        "[suite]\nanalyses = chains\n");
    auto g = graph_from_config(cfg);
    CHECK_THROWS_AS(validate_config(cfg, g), ConfigError);
  }
  SUBCASE("a clean config validates") {
    auto cfg = RunConfig::from_string(kSmallConfig);
    auto g = graph_from_config(cfg);
    CHECK_NOTHROW(validate_config(cfg, g));
  }
}

TEST_CASE("suite on two_point: all analyses, exit 0, closed-form kernel rows") {
  auto cfg = RunConfig::from_string(R"(
[graph]
generator = two_point
[gen]
delta_alpha = 1.0
[kernel]
base = 0
k_max = 8
t = 0.1,1,5
tol = 1e-12
fit = 0
[curvature]
vertex = 0
n = 1000
K = -10
restarts = 6
max_iterations = 800
[inequalities]
D = 2
beta = 1
eps_min = 0.25
eps_max = 16
eps_points = 6
quotients = 1
family_heat_times = 3
family_randoms = 2
family_perturbed = 2
family_bumps = 1
[chains]
which = a,b,c,d
mu = 2
t = 0.5,1,2,4
family_heat_times = 3
family_randoms = 2
family_perturbed = 2
family_bumps = 1
[suite]
analyses = gen,kernel,curvature,inequalities,chains
seed = 4
)");
  SuiteOptions opt;
  auto dir = unique_dir("k2suite");
  opt.out_dir = dir.string();
  Report report;
  CHECK(run_suite(cfg, opt, report) == 0);
  bool found_rows = false;
  for (const auto& r : report.records) {
    if (r.value("record", "") != "kernel-rows") continue;
    found_rows = true;
    for (const auto& e : r.at("rows")) {
      double t = e.at("t").get<double>();
      auto density = e.at("density").get<std::vector<double>>();
      double expect = (1.0 + std::exp(-2.0 * t)) / 2.0;
      CHECK(std::abs(density[0] - expect) < 1e-10);
      CHECK(std::abs(density[1] - (1.0 - expect)) < 1e-10);
    }
  }
  CHECK(found_rows);
  fs::remove_all(dir);
}

TEST_CASE("suite determinism: identical configs give byte-identical records") {
  auto cfg = RunConfig::from_string(kSmallConfig);
  auto d1 = unique_dir("det1"), d2 = unique_dir("det2");
  SuiteOptions opt;
  Report r1, r2;
  opt.out_dir = d1.string();
  int c1 = run_suite(cfg, opt, r1);
  r1.write(d1.string());
  opt.out_dir = d2.string();
  int c2 = run_suite(cfg, opt, r2);
  r2.write(d2.string());
  CHECK(c1 == 0);
  CHECK(c2 == 0);
  CHECK(slurp(d1 / "records.jsonl") == slurp(d2 / "records.jsonl"));
  CHECK(!slurp(d1 / "records.jsonl").empty());
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("kernel cache: hits are sound and never change records") {
  auto cfg = RunConfig::from_string(
      "[graph]\ngenerator = torus(6,2)\n"
      "[kernel]\nbase = 0\nk_max = 16\nk_fit_min = 4\nk_fit_max = 16\n"
      "t_min = 1\nt_max = 4\nt_points = 4\ntol = 1e-10\n"
      "[suite]\nanalyses = kernel\nseed = 3\n");
  auto cache_dir = unique_dir("cache");
  auto o1 = unique_dir("cold"), o2 = unique_dir("warm");
  SuiteOptions opt;
  opt.cache = cache_dir.string();
  Report cold, warm;
  opt.out_dir = o1.string();
  run_suite(cfg, opt, cold);
  cold.write(o1.string());
  // cache file exists now
  bool any_file = false;
  for (auto& e : fs::directory_iterator(cache_dir)) any_file |= e.is_regular_file();
  CHECK(any_file);
  opt.out_dir = o2.string();
  run_suite(cfg, opt, warm);
  warm.write(o2.string());
  CHECK(slurp(o1 / "records.jsonl") == slurp(o2 / "records.jsonl"));

  SUBCASE("truncated cache files are rejected") {
    auto g = graph_from_config(cfg);
    KernelCacheKey key{&g, 0, 6, {}, 1e-10};
    cache_store(cache_dir.string(), key, discrete_kernel(g, 0, 6));
    REQUIRE(cache_load(cache_dir.string(), key).has_value());
    auto path = cache_path(cache_dir.string(), key);
    auto text = slurp(path);
    {
      std::ofstream out(path);
      out << text.substr(0, text.size() - 40);  // cut mid-row
    }
    CHECK(!cache_load(cache_dir.string(), key).has_value());
  }

  SUBCASE("header mismatch forces recomputation") {
    auto g = graph_from_config(cfg);
    std::vector<double> times{1.0, 2.0};
    KernelCacheKey key{&g, 0, 8, times, 1e-10};
    auto table = discrete_kernel(g, 0, 8);
    add_continuous_rows(table, times, 1e-10);
    key.k_max = table.max_k();
    cache_store(cache_dir.string(), key, table);
    KernelCacheKey other = key;
    other.tol = 1e-8;  // different tolerance, same file path
    CHECK(!cache_load(cache_dir.string(), other).has_value());
    CHECK(cache_load(cache_dir.string(), key).has_value());
    auto loaded = cache_load(cache_dir.string(), key);
    auto fresh = discrete_kernel(g, 0, 8);
    for (int k = 0; k <= 8; ++k)
      for (int y = 0; y < g.size(); ++y)
        CHECK(loaded->discrete[k][y] == fresh.discrete[k][y]);
  }
  fs::remove_all(cache_dir);
  fs::remove_all(o1);
  fs::remove_all(o2);
}

TEST_CASE("cache directory defaults to the environment variable") {
  unsetenv("HEATINEQ_CACHE");
  CHECK(default_cache_dir().empty());
  setenv("HEATINEQ_CACHE", "/tmp/heatineq_env_cache", 1);
  CHECK(default_cache_dir() == "/tmp/heatineq_env_cache");
  unsetenv("HEATINEQ_CACHE");
}

TEST_CASE("--no-witness strips witness vectors from records") {
  auto cfg = RunConfig::from_string(
      "[graph]\ngenerator = lattice_window(4,1)\n"
      "[curvature]\nvertex = center\nn = 0.5\nK = 0\nrestarts = 6\n"
      "max_iterations = 800\n"
      "[suite]\nanalyses = curvature\nseed = 2\n");
  for (bool strip : {false, true}) {
    SuiteOptions opt;
    opt.no_witness = strip;
    auto dir = unique_dir(strip ? "now" : "wit");
    opt.out_dir = dir.string();
    Report report;
    run_suite(cfg, opt, report);
    bool has_witness = false;
    for (const auto& r : report.records)
      if (r.contains("witness_values")) has_witness = true;
    CHECK(has_witness == !strip);
    fs::remove_all(dir);
  }
}

TEST_CASE("report: tables embed in records and export as CSV") {
  Report r;
  PlotTable t;
  t.columns = {"x", "y"};
  t.rows = {{1.0, 2.0}, {3.0, 4.0}};
  r.add_table("demo", t);
  auto dir = unique_dir("report");
  r.write(dir.string());
  auto back = table_from_records((dir / "records.jsonl").string(), "demo");
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK_THROWS(table_from_records((dir / "records.jsonl").string(), "absent"));

  write_csv(back, (dir / "demo.csv").string());
  CHECK(slurp(dir / "demo.csv") == "x,y\n1,2\n3,4\n");

  PlotTable empty;
  empty.columns = {"a"};
  CHECK_THROWS(write_csv(empty, (dir / "empty.csv").string()));
  PlotTable neg;
  neg.columns = {"a"};
  neg.rows = {{-1.0}};
  CHECK_THROWS(write_csv(neg, (dir / "neg.csv").string(), true));
  fs::remove_all(dir);
}

#ifdef HEATINEQ_BIN
TEST_CASE("command line end to end") {
  auto dir = unique_dir("cli");
  auto cfg_path = dir / "run.cfg";
  {
    std::ofstream out(cfg_path);
    out << kSmallConfig;
  }
  auto run = [&](const std::string& args) {
    std::string cmd = std::string(HEATINEQ_BIN) + " " + args + " >" +
                      (dir / "stdout.txt").string() + " 2>" +
                      (dir / "stderr.txt").string();
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
  };

  SUBCASE("gen with an inline graph and an edge dump") {
    CHECK(run("gen --graph 'torus(4,2)' --out " + (dir / "g").string() + " --edges " +
              (dir / "edges.txt").string()) == 0);
    CHECK(slurp(dir / "g" / "records.jsonl").find("\"record\":\"graph\"") !=
          std::string::npos);
    CHECK(slurp(dir / "edges.txt").find("0 1 1") != std::string::npos);
  }

  SUBCASE("each analysis subcommand runs from the same config") {
    CHECK(run("kernel --config " + cfg_path.string() + " --out " + (dir / "k").string()) == 0);
    CHECK(slurp(dir / "k" / "records.jsonl").find("exponent-fit") != std::string::npos);
    CHECK(run("curvature --config " + cfg_path.string() + " --out " +
              (dir / "c").string()) == 0);
    CHECK(slurp(dir / "c" / "records.jsonl").find("no-violation-found") !=
          std::string::npos);
    CHECK(run("ineq --config " + cfg_path.string() + " --out " + (dir / "i").string()) == 0);
    CHECK(slurp(dir / "i" / "records.jsonl").find("beta-curve") != std::string::npos);
    CHECK(run("chains --config " + cfg_path.string() + " --out " +
              (dir / "ch").string()) == 0);
    CHECK(slurp(dir / "ch" / "records.jsonl").find("chain-check") != std::string::npos);
    // a seed override changes the run header but stays deterministic
    CHECK(run("ineq --config " + cfg_path.string() + " --seed 99 --out " +
              (dir / "i99").string()) == 0);
    CHECK(slurp(dir / "i99" / "records.jsonl").find("\"seed\":99") != std::string::npos);
  }

  SUBCASE("suite, determinism across processes, plotdata round trip") {
    CHECK(run("suite --config " + cfg_path.string() + " --out " + (dir / "a").string()) == 0);
    CHECK(run("suite --config " + cfg_path.string() + " --out " + (dir / "b").string()) == 0);
    CHECK(slurp(dir / "a" / "records.jsonl") == slurp(dir / "b" / "records.jsonl"));
    CHECK(run("plotdata --report " + (dir / "a" / "records.jsonl").string() +
              " --table due-decay --out " + (dir / "due.csv").string()) == 0);
    CHECK(slurp(dir / "due.csv").substr(0, 2) == "k,");
    CHECK(run("plotdata --report " + (dir / "a" / "records.jsonl").string() +
              " --table nonsense --out " + (dir / "x.csv").string()) == 1);
  }

  SUBCASE("guard violations exit with the configuration code") {
    auto bad_path = dir / "bad.cfg";
    {
      std::ofstream out(bad_path);
      out << "[graph]\ngenerator = lattice_window(5,1)\n"
          << "[kernel]\nbase = center\nk_max = 40\nfit = 0\n"
          << "[suite]\nanalyses = kernel\n";
    }
    CHECK(run("kernel --config " + bad_path.string() + " --out " +
              (dir / "bad").string()) == 1);
    CHECK(slurp(dir / "stderr.txt").find("configuration error") != std::string::npos);
    CHECK(slurp(dir / "stderr.txt").find("kernel") != std::string::npos);
  }

  SUBCASE("failing checks exit with code 2") {
    auto fail_path = dir / "fail.cfg";
    {
      // delta(alpha) at 0.25 genuinely fails on the lazy torus edges
      std::ofstream out(fail_path);
      out << "[graph]\ngenerator = torus(6,2)\nalpha_loop = 0.25\n"
          << "[gen]\ndelta_alpha = 0.25\n"
          << "[suite]\nanalyses = gen\n";
    }
    CHECK(run("suite --config " + fail_path.string() + " --out " +
              (dir / "fail").string()) == 2);
  }
  fs::remove_all(dir);
}
#endif
