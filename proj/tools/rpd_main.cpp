// rpd: regularized projection depth from the command line.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_pool_flags(CLI::App& app, rpd::cli::PoolOptions& o) {
  app.add_option("--u", o.u, "Quantile level for beta tuning, in [0, 1)")->default_val(0.01);
  app.add_option("--M", o.M, "Number of random directions")->default_val(10000);
  app.add_option("--seed", o.seed, "Seed of the direction stream")->default_val(0);
  app.add_option("--beta", o.beta, "Use this beta instead of tuning it from --u");
  app.add_option("--pool", o.load_pool, "Load a saved direction pool (JSON) instead of sampling");
  app.add_option("--save-pool", o.save_pool, "Write the direction pool to this JSON file");
  app.add_flag("--grid-header", o.grid_header, "First row of each curve file holds the grid");
  app.add_option("--threads", o.threads, "Worker threads (0 = all cores)")->default_val(0);
}

std::vector<std::size_t> parse_schedule(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized projection depth for discretized functional data"};
  app.require_subcommand(1);

  rpd::cli::DepthOptions depth;
  auto* depth_cmd = app.add_subcommand("depth", "Depth of query curves w.r.t. a sample");
  depth_cmd->add_option("sample", depth.sample_file, "Sample curve file (CSV)")->required();
  depth_cmd->add_option("query", depth.query_file, "Query curve file (CSV)")->required();
  depth_cmd->add_option("-o,--out", depth.out_file, "Output CSV (default stdout)");
  add_pool_flags(*depth_cmd, depth.pool);

  rpd::cli::OutliersOptions outliers;
  auto* outliers_cmd = app.add_subcommand("outliers", "Rank every sample curve by depth");
  outliers_cmd->add_option("sample", outliers.sample_file, "Sample curve file (CSV)")->required();
  outliers_cmd->add_option("--depth", outliers.depth, "rpd, fd or id")->default_val("rpd");
  outliers_cmd->add_option("-o,--out", outliers.out_file, "Output CSV (default stdout)");
  add_pool_flags(*outliers_cmd, outliers.pool);

  rpd::cli::MedianOptions median;
  auto* median_cmd = app.add_subcommand("median", "Deepest sample curve");
  median_cmd->add_option("sample", median.sample_file, "Sample curve file (CSV)")->required();
  add_pool_flags(*median_cmd, median.pool);

  rpd::cli::PoolBuildOptions pool;
  auto* pool_cmd = app.add_subcommand("pool", "Build a direction pool and write it as JSON");
  pool_cmd->add_option("sample", pool.sample_file, "Sample curve file (CSV)")->required();
  pool_cmd->add_option("-o,--out", pool.out_file, "Output JSON (default stdout)");
  pool_cmd->add_option("--M", pool.M, "Number of random directions")->default_val(10000);
  pool_cmd->add_option("--seed", pool.seed, "Seed of the direction stream")->default_val(0);
  pool_cmd->add_flag("--grid-header", pool.grid_header, "First row holds the grid");
  pool_cmd->add_option("--threads", pool.threads, "Worker threads (0 = all cores)")->default_val(0);

  rpd::cli::Table1Options table1;
  auto* table1_cmd = app.add_subcommand("table1", "Run the outlier-ranking Monte Carlo study");
  table1_cmd->add_option("config", table1.config_file, "Experiment config (JSON)")->required();
  table1_cmd->add_option("out_dir", table1.out_dir, "Directory for report.json and table1.csv")
      ->required();
  table1_cmd->add_option("--threads", table1.threads, "Worker threads (overrides the config)");

  rpd::cli::DegeneracyOptions degeneracy;
  std::string schedule = "1000,10000,100000,200000";
  auto* degeneracy_cmd =
      app.add_subcommand("degeneracy", "Unregularized vs regularized depth as M grows");
  degeneracy_cmd->add_option("--dim", degeneracy.config.dim, "Dimension")->default_val(101);
  degeneracy_cmd->add_option("--n", degeneracy.config.n, "Sample size")->default_val(500);
  degeneracy_cmd->add_option("--M-schedule", schedule, "Increasing comma-separated M values")
      ->default_val(schedule);
  degeneracy_cmd->add_option("--seed", degeneracy.config.seed, "Seed")->default_val(0);
  degeneracy_cmd->add_option("--u", degeneracy.config.u, "Quantile level")->default_val(0.05);
  degeneracy_cmd->add_option("--threads", degeneracy.config.threads, "Worker threads")
      ->default_val(0);
  degeneracy_cmd->add_option("-o,--out", degeneracy.out_file, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : rpd::cli::kInputError;
  }

  if (*depth_cmd)
    return rpd::cli::cmd_depth(depth, std::cout, std::cerr);
  if (*outliers_cmd)
    return rpd::cli::cmd_outliers(outliers, std::cout, std::cerr);
  if (*median_cmd)
    return rpd::cli::cmd_median(median, std::cout, std::cerr);
  if (*pool_cmd)
    return rpd::cli::cmd_pool(pool, std::cout, std::cerr);
  if (*table1_cmd)
    return rpd::cli::cmd_table1(table1, std::cout, std::cerr);
  if (*degeneracy_cmd) {
    try {
      degeneracy.config.M_schedule = parse_schedule(schedule);
    } catch (const std::exception&) {
      std::cerr << "error: --M-schedule must be a comma-separated list of integers\n";
      return rpd::cli::kInputError;
    }
    return rpd::cli::cmd_degeneracy(degeneracy, std::cout, std::cerr);
  }
  return rpd::cli::kInputError;
}
