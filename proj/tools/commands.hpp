#ifndef RPD_TOOLS_COMMANDS_HPP
#define RPD_TOOLS_COMMANDS_HPP

// Subcommands of the rpd command-line tool. Each returns the process exit
// code: 0 success, 2 input error, 3 degenerate direction pool, 4 too many
// failed Monte Carlo runs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rpd/rpd.hpp"

namespace rpd::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kDegeneratePool = 3, kExperimentFailed = 4 };

struct PoolOptions {
  double u = 0.01;
  std::size_t M = 10000;
  std::uint64_t seed = 0;
  std::optional<double> beta; // bypasses u; meant for invariance checks
  std::string load_pool;      // reuse a saved pool instead of sampling
  std::string save_pool;
  bool grid_header = false;
  unsigned threads = 0;
};

struct DepthOptions {
  std::string sample_file;
  std::string query_file;
  std::string out_file; // empty = stdout
  PoolOptions pool;
};

struct OutliersOptions {
  std::string sample_file;
  std::string out_file;
  std::string depth = "rpd";
  PoolOptions pool;
};

struct MedianOptions {
  std::string sample_file;
  PoolOptions pool;
};

struct PoolBuildOptions {
  std::string sample_file;
  std::string out_file;
  std::size_t M = 10000;
  std::uint64_t seed = 0;
  bool grid_header = false;
  unsigned threads = 0;
};

struct Table1Options {
  std::string config_file;
  std::string out_dir;
  std::optional<unsigned> threads;
};

struct DegeneracyOptions {
  DegeneracyConfig config;
  std::string out_file;
};

namespace detail {

/// Runs `body`, mapping library errors onto exit codes with a one-line
/// diagnostic on `err`.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const EmptyDirectionSetError& e) {
    err << "error: " << e.what() << '\n';
    return kDegeneratePool;
  } catch (const DegenerateSampleError& e) {
    err << "error: " << e.what() << '\n';
    return kDegeneratePool;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

/// Writes to `path`, or to `fallback` when `path` is empty.
template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw ParseError("cannot write " + path);
  write(out);
}

struct Prepared {
  std::shared_ptr<const DirectionPool> pool;
  RegularizedPool regularized;
};

inline Prepared prepare_pool(const FunctionalSample& sample, const PoolOptions& o) {
  std::shared_ptr<const DirectionPool> pool;
  if (!o.load_pool.empty()) {
    pool = std::make_shared<const DirectionPool>(load_pool(o.load_pool));
    if (pool->dimension() != sample.dimension())
      throw ParseError(o.load_pool + ": pool dimension does not match the sample");
    if (pool->source_checksum() != sample_checksum(sample))
      throw ParseError(o.load_pool + ": pool was built from a different sample");
  } else {
    if (!(o.u >= 0.0 && o.u < 1.0))
      throw ParseError("--u must lie in [0, 1)");
    pool = std::make_shared<const DirectionPool>(build_pool(sample, o.M, o.seed, o.threads));
  }
  if (!o.save_pool.empty())
    save_pool(*pool, o.save_pool);
  const double beta = o.beta ? *o.beta : tune_beta(*pool, o.u);
  return {pool, RegularizedPool(pool, beta)};
}

} // namespace detail

inline int cmd_depth(const DepthOptions& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const FunctionalSample sample = read_curve_file(o.sample_file, o.pool.grid_header);
    const FunctionalSample queries =
        read_curve_file(o.query_file, o.pool.grid_header, sample.grid());
    const auto prep = detail::prepare_pool(sample, o.pool);
    const auto depths = rpd_batch(queries, prep.regularized, o.pool.threads);
    detail::emit(o.out_file, out, [&](std::ostream& os) {
      os << "query,depth,worst_direction,beta\n";
      for (std::size_t i = 0; i < depths.size(); ++i)
        os << i << ',' << format_real(depths[i].value) << ','
           << prep.regularized.kept()[depths[i].worst_direction] << ','
           << format_real(prep.regularized.beta()) << '\n';
    });
    return kOk;
  });
}

inline int cmd_outliers(const OutliersOptions& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const DepthNotion notion = parse_depth_notion(o.depth);
    const FunctionalSample sample = read_curve_file(o.sample_file, o.pool.grid_header);
    std::vector<double> depth;
    if (notion == DepthNotion::rpd) {
      const auto prep = detail::prepare_pool(sample, o.pool);
      depth = depth_values(rpd_batch(sample, prep.regularized, o.pool.threads));
    } else {
      const HalfspaceDepths hs = halfspace_depths(sample, sample, o.pool.threads);
      depth = notion == DepthNotion::fd ? hs.fd : hs.id;
    }
    const std::vector<double> ranks = depth_ranks(depth);
    std::vector<std::size_t> order(depth.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
    detail::emit(o.out_file, out, [&](std::ostream& os) {
      os << "curve,depth,rank\n";
      for (std::size_t i : order)
        os << i << ',' << format_real(depth[i]) << ',' << format_real(ranks[i]) << '\n';
    });
    return kOk;
  });
}

inline int cmd_median(const MedianOptions& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const FunctionalSample sample = read_curve_file(o.sample_file, o.pool.grid_header);
    const auto prep = detail::prepare_pool(sample, o.pool);
    const MedianEstimate m = rpd_median(sample, prep.regularized, o.pool.threads);
    out << "index," << m.index << '\n';
    out << "depth," << format_real(m.depth.value) << '\n';
    out << "values";
    for (double v : m.curve.values())
      out << ',' << format_real(v);
    out << '\n';
    return kOk;
  });
}

/// Builds a direction pool from a sample and writes it as JSON.
inline int cmd_pool(const PoolBuildOptions& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const FunctionalSample sample = read_curve_file(o.sample_file, o.grid_header);
    const DirectionPool pool = build_pool(sample, o.M, o.seed, o.threads);
    detail::emit(o.out_file, out,
                 [&](std::ostream& os) { os << pool_to_json(pool).dump(1) << '\n'; });
    return kOk;
  });
}

inline void print_summary(std::ostream& out, const ExperimentReport& rep) {
  auto show = [&](const SummaryCell& c) {
    out << to_string(c.notion);
    if (c.u)
      out << " u=" << *c.u;
    if (c.mean)
      out << ": mean rank " << *c.mean << " (sd " << *c.sd << ")";
    else
      out << ": undefined";
    out << " over " << c.runs_used << " run(s)";
    if (rep.single_run)
      out << " [single run, sd reported as 0]";
    out << '\n';
  };
  for (const auto& c : rep.summary)
    show(c);
  if (rep.failed_runs > 0)
    out << rep.failed_runs << " run(s) failed\n";
}

inline int cmd_table1(const Table1Options& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    std::ifstream in(o.config_file);
    if (!in)
      throw ParseError("cannot open " + o.config_file);
    ExperimentConfig cfg = read_config(in, o.config_file);
    if (o.threads)
      cfg.threads = *o.threads;
    const ExperimentReport rep = run_experiment(cfg);
    std::filesystem::create_directories(o.out_dir);
    const std::filesystem::path dir(o.out_dir);
    detail::emit((dir / "report.json").string(), out,
                 [&](std::ostream& os) { os << report_to_json(rep).dump(2) << '\n'; });
    detail::emit((dir / "table1.csv").string(), out,
                 [&](std::ostream& os) { write_report_csv(os, rep); });
    print_summary(out, rep);
    if (rep.aborted) {
      err << "error: " << rep.failed_runs << " of " << cfg.runs
          << " runs failed (more than 5%); aggregate withheld\n";
      return kExperimentFailed;
    }
    return kOk;
  });
}

inline int cmd_degeneracy(const DegeneracyOptions& o, std::ostream& out, std::ostream& err) {
  return detail::guarded(err, [&] {
    const auto rows = run_degeneracy(o.config);
    detail::emit(o.out_file, out, [&](std::ostream& os) {
      os << "M,min_unregularized_depth,beta,min_regularized_depth,min_bound_margin,"
            "bound_respected\n";
      for (const auto& r : rows)
        os << r.M << ',' << format_real(r.min_unregularized_depth) << ','
           << format_real(r.beta) << ',' << format_real(r.min_regularized_depth) << ','
           << format_real(r.min_bound_margin) << ',' << (r.bound_respected ? 1 : 0) << '\n';
    });
    return kOk;
  });
}

} // namespace rpd::cli

#endif // RPD_TOOLS_COMMANDS_HPP
